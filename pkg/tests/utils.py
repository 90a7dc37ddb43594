import itertools
import os

import numpy as np

from semgame import ltl
from semgame.abstraction import AbstractionSpace
from semgame.game import Edge, LabelledParityGame, Vertex
from semgame.generator import FormulaClassSpec, random_formula, weights
from semgame.serialization import load


PROJECT_ROOT = os.path.dirname(os.path.dirname(__file__))
FIXTURES = os.path.join(PROJECT_ROOT, 'tests', 'fixtures')
EXAMPLE_GAME = os.path.join(FIXTURES, 'example_game.json')

UNIFORM = weights(1, 1, 1, 1, 1, 1, 1)


def example_game():
    return load(EXAMPLE_GAME)


def random_game(rng, size, max_priority=6, max_degree=3):
    """Unlabelled game with random owners, successors and edge priorities."""
    vertices = [Vertex(vertex, int(rng.integers(2)), None) for vertex in range(size)]
    edges = []
    for vertex in range(size):
        degree = int(rng.integers(1, min(max_degree, size) + 1))
        for target in rng.choice(size, size=degree, replace=False):
            edges.append(Edge(vertex, int(target), int(rng.integers(max_priority + 1)), ()))
    return LabelledParityGame(vertices, edges, 0)


def random_ltl(rng, size, atoms=3):
    return random_formula(FormulaClassSpec('uniform', UNIFORM, size, atoms), rng)


def random_word(rng, atoms=('a', 'b', 'c'), max_length=6):
    """A lasso word (prefix, loop) with a nonempty loop and at most
    `max_length` letters overall."""
    length = int(rng.integers(1, max_length + 1))
    loop_length = int(rng.integers(1, length + 1))

    def letter():
        return frozenset(name for name in atoms if rng.random() < 0.5)

    prefix = [letter() for _ in range(length - loop_length)]
    loop = [letter() for _ in range(loop_length)]
    return prefix, loop


def _propositional(phi, assignment):
    if phi.kind == ltl.TRUE_KIND:
        return True
    if phi.kind == ltl.FALSE_KIND:
        return False
    if phi.kind == ltl.ATOM or phi.is_temporal:
        return assignment[phi]
    if phi.kind == ltl.NOT:
        return not _propositional(phi.children[0], assignment)
    if phi.kind == ltl.AND:
        return all(_propositional(child, assignment) for child in phi.children)
    return any(_propositional(child, assignment) for child in phi.children)


def brute_force_models(phi, ap_universe=()):
    """Satisfying assignments of phi's abstraction, by enumeration."""
    variables = AbstractionSpace(phi, ap_universe).variables
    count = 0
    for values in itertools.product((False, True), repeat=len(variables)):
        if _propositional(phi, dict(zip(variables, values))):
            count += 1
    return count, len(variables)


def seeded(seed):
    return np.random.default_rng(seed)
