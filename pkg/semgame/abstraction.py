"""Propositional abstraction of LTL formulae.

Atoms and top-level temporal subformulae become BDD variables. The shared
manager is confined to one worker, like the formula store, and is dropped
by `reset` (at the latest when the interpreter exits, while dd can still
release its nodes).
"""
import atexit

from dd import autoref as _bdd

from semgame import ltl


class AbstractionSpace(object):
    """Ordered variables of a formula's propositional abstraction.

    Atoms come first in lexicographic order, then the top-level temporal
    subformulae by creation index.
    """

    def __init__(self, phi, ap_universe=()):
        self.formula = phi
        self.atoms = sorted(set(ap_universe) | ltl.atoms_outside_temporal(phi))
        self.temporals = sorted(ltl.top_operators(phi))

    @property
    def variables(self):
        return [ltl.atom(name) for name in self.atoms] + self.temporals

    def __len__(self):
        return len(self.atoms) + len(self.temporals)


class PropositionalManager(object):
    def __init__(self):
        self.bdd = _bdd.BDD()
        self._declared = set()
        self._cache = {}
        self._representatives = {}

    def variable_name(self, formula):
        if formula.kind == ltl.ATOM:
            return 'p_' + formula.name
        return 't_{}'.format(formula.index)

    def variable(self, formula):
        name = self.variable_name(formula)
        if name not in self._declared:
            self.bdd.declare(name)
            self._declared.add(name)
        return self.bdd.var(name)

    def to_bdd(self, phi):
        node = self._cache.get(phi)
        if node is not None:
            return node
        kind = phi.kind
        if kind == ltl.TRUE_KIND:
            node = self.bdd.true
        elif kind == ltl.FALSE_KIND:
            node = self.bdd.false
        elif kind == ltl.ATOM or phi.is_temporal:
            node = self.variable(phi)
        elif kind == ltl.NOT:
            node = ~self.to_bdd(phi.children[0])
        elif kind == ltl.AND:
            node = self.bdd.true
            for child in phi.children:
                node = node & self.to_bdd(child)
        else:
            node = self.bdd.false
            for child in phi.children:
                node = node | self.to_bdd(child)
        self._cache[phi] = node
        return node

    def count(self, node, variables):
        """Satisfying assignments of `node` over `variables` many variables."""
        if node == self.bdd.false:
            return 0
        if node == self.bdd.true:
            return 2 ** variables
        support = len(self.bdd.support(node))
        return self.bdd.count(node, nvars=support) * 2 ** (variables - support)

    def simplify(self, phi):
        """Canonical representative of phi's propositional equivalence class.

        tt and ff are detected exactly; otherwise the formula seen so far with
        the same decision diagram that is smallest by (size, text) stands for
        the whole class, whatever order the candidates came in.
        """
        node = self.to_bdd(phi)
        if node == self.bdd.true:
            return ltl.TRUE
        if node == self.bdd.false:
            return ltl.FALSE
        key = int(node)
        entry = self._representatives.get(key)
        if entry is None or _rank(phi) < _rank(entry[1]):
            entry = self._representatives[key] = (node, phi)
        return entry[1]

    def equivalent(self, phi, psi):
        return self.to_bdd(phi) == self.to_bdd(psi)

    def equivalence_key(self, phi):
        """Equal for exactly the propositionally equivalent formulae."""
        return int(self.to_bdd(phi))

    def close(self):
        self._cache.clear()
        self._representatives.clear()


def _rank(phi):
    return ltl.size(phi), phi.text


_manager = None


def manager():
    global _manager
    if _manager is None:
        _manager = PropositionalManager()
    return _manager


def simplify(phi):
    return manager().simplify(phi)


def equivalent(phi, psi):
    return manager().equivalent(phi, psi)


def equivalence_key(phi):
    return manager().equivalence_key(phi)


@atexit.register
def reset():
    """Drops the shared manager with every node it holds."""
    global _manager
    if _manager is not None:
        _manager.close()
        _manager = None
