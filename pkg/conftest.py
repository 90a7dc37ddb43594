"""Let pytest collect the nose-style test methods marked with ``@istest``.

pytest's unittest collector only asks ``TestLoader.getTestCaseNames`` for
``test*`` methods, while nose also runs any method whose ``__test__`` is true.
"""
import unittest


_get_test_case_names = unittest.TestLoader.getTestCaseNames


def _get_test_case_names_with_istest(self, testCaseClass):
    names = list(_get_test_case_names(self, testCaseClass))
    for name in dir(testCaseClass):
        if name.startswith('_') or name in names:
            continue
        attribute = getattr(testCaseClass, name, None)
        if callable(attribute) and getattr(attribute, '__test__', False) is True:
            names.append(name)
    return names


unittest.TestLoader.getTestCaseNames = _get_test_case_names_with_istest
