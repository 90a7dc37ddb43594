"""Trueness: the share of satisfying assignments of a formula's
propositional abstraction."""
from collections import namedtuple
from fractions import Fraction

from semgame.abstraction import AbstractionSpace, manager
from semgame.errors import CapacityError


VARIABLE_CAP = 64


class TruenessValue(namedtuple('TruenessValue', 'models variables')):
    """`models` satisfying assignments out of 2 ** `variables`."""

    @property
    def denominator(self):
        return 2 ** self.variables

    @property
    def fraction(self):
        return Fraction(self.models, self.denominator)

    def __float__(self):
        return float(self.fraction)


def trueness(phi, ap_universe=(), variable_cap=VARIABLE_CAP):
    space = AbstractionSpace(phi, ap_universe)
    if len(space) > variable_cap:
        raise CapacityError(len(space), variable_cap)
    propositional = manager()
    models = propositional.count(propositional.to_bdd(phi), len(space))
    return TruenessValue(models, len(space))


_values = {}


def value(phi):
    """Trueness of phi as a float, memoized per formula."""
    result = _values.get(phi)
    if result is None:
        result = _values[phi] = float(trueness(phi))
    return result


def clear_caches():
    _values.clear()


def minimum_value(formulae):
    """Minimum trueness over an obligation list; 1 for an empty list."""
    return min((value(formula) for formula in formulae), default=1.0)
