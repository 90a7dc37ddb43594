"""Random formulae with weighted operators.

Trees are grown top down with an exact node budget: one node is an atom,
two nodes a unary operator over an atom, larger budgets pick any operator
with probability proportional to its weight and split the rest of the
budget uniformly between the operands. The formula store may shrink a tree
(duplicate operands, nested G or F), so trees that end up more than a fifth
below the budget are drawn again.
"""
from collections import namedtuple
import itertools
import logging
import string

import numpy as np

from semgame import ltl


log = logging.getLogger(__name__)

AND = 'and'
OR = 'or'
GLOBALLY = 'G'
FINALLY = 'F'
NEXT = 'X'
UNTIL = 'U'
NOT = 'not'
OPERATORS = (AND, OR, GLOBALLY, FINALLY, NEXT, UNTIL, NOT)
UNARY = (GLOBALLY, FINALLY, NEXT, NOT)
TEMPORAL = (GLOBALLY, FINALLY, NEXT, UNTIL)

DEFAULT_SIZE = 10
DEFAULT_ATOMS = 4
SIZE_TOLERANCE = 0.2
ATTEMPTS = 100

BUILDERS = {
    AND: ltl.conjunction,
    OR: ltl.disjunction,
    GLOBALLY: ltl.always,
    FINALLY: ltl.eventually,
    NEXT: ltl.next_,
    UNTIL: ltl.until,
    NOT: ltl.negation,
}


FormulaClassSpec = namedtuple('FormulaClassSpec', 'name weights size atoms',
                              defaults=(DEFAULT_SIZE, DEFAULT_ATOMS))

Model = namedtuple('Model', 'id family formula inputs outputs')


def weights(conjunction, disjunction, globally, finally_, next_, until, negation=0):
    return dict(zip(OPERATORS, (conjunction, disjunction, globally, finally_, next_, until, negation)))


CLASSES = {
    'safety': FormulaClassSpec('safety', weights(7, 7, 10, 0, 5, 0)),
    'cosafety': FormulaClassSpec('cosafety', weights(7, 7, 0, 10, 5, 0)),
    'near-safety': FormulaClassSpec('near-safety', weights(7, 7, 10, 1, 5, 1)),
    'near-cosafety': FormulaClassSpec('near-cosafety', weights(7, 7, 1, 10, 5, 1)),
    'parity': FormulaClassSpec('parity', weights(1, 1, 1, 1, 1, 1, 1)),
}


def validate_spec(spec):
    if any(weight < 0 for weight in spec.weights.values()):
        raise ValueError('operator weights must not be negative')
    if not any(spec.weights.get(operator, 0) > 0 for operator in TEMPORAL):
        raise ValueError('class {} has no temporal operator'.format(spec.name))
    if spec.size < 1 or spec.atoms < 1:
        raise ValueError('size and atom count must be positive')


def atom_names(count):
    letters = string.ascii_lowercase
    return [letters[index] if index < len(letters) else 'p{}'.format(index) for index in range(count)]


def split_atoms(names):
    """Even positions become inputs, odd positions outputs."""
    return tuple(names[0::2]), tuple(names[1::2])


def tree_size(phi):
    """Node count with n-ary conjunctions and disjunctions read as binary chains."""
    if phi.kind in (ltl.AND, ltl.OR):
        return len(phi.children) - 1 + sum(tree_size(child) for child in phi.children)
    return 1 + sum(tree_size(child) for child in phi.children)


def random_formula(spec, rng):
    validate_spec(spec)
    names = atom_names(spec.atoms)

    def pick(operators):
        chances = np.array([spec.weights.get(operator, 0) for operator in operators], dtype=float)
        return operators[int(rng.choice(len(operators), p=chances / chances.sum()))]

    def grow(size):
        if size > 1:
            candidates = [operator for operator in OPERATORS
                          if spec.weights.get(operator, 0) > 0 and (size > 2 or operator in UNARY)]
            if candidates:
                operator = pick(candidates)
                if operator in UNARY:
                    return BUILDERS[operator](grow(size - 1))
                left = int(rng.integers(1, size - 1))
                return BUILDERS[operator](grow(left), grow(size - 1 - left))
        return ltl.atom(names[int(rng.integers(len(names)))])

    smallest = spec.size * (1 - SIZE_TOLERANCE)
    for _ in range(ATTEMPTS):
        phi = grow(spec.size)
        if tree_size(phi) >= smallest:
            return phi
    log.warning('no %s formula of at least %d nodes in %d attempts, keeping %s (%d nodes)',
                spec.name, smallest, ATTEMPTS, phi.text, tree_size(phi))
    return phi


def model_stream(spec, seed=0):
    """Endless stream of models of one class, reproducible from `seed`."""
    family = sorted(CLASSES).index(spec.name) if spec.name in CLASSES else len(CLASSES)
    rng = np.random.default_rng(np.random.SeedSequence([seed, family]))
    inputs, outputs = split_atoms(atom_names(spec.atoms))
    for index in itertools.count():
        yield Model('{}-{:04d}'.format(spec.name, index), spec.name, random_formula(spec, rng).text, inputs, outputs)


def generate_models(spec, count, seed=0):
    """The first `count` models of `model_stream`."""
    return list(itertools.islice(model_stream(spec, seed), count))
