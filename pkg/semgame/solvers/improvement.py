"""Strategy improvement with discrete valuations.

Valuations are computed on the vertex priority view of a game, where the
relevance order (priority, id) is total. A valuation of a vertex is the
triple (w, P, d): w the most relevant vertex on the cycle the play ends in,
P the vertices more relevant than w seen before reaching it, d the length
of the path to w. The opponent of the improving player always plays an
optimal counter-strategy.
"""
from collections import deque, namedtuple
import logging
import time

import numpy as np

from semgame import analysis
from semgame.errors import DeadlineExceeded, LabellingError, SolverError
from semgame.game import (
    ENVIRONMENT, PLAYER_NAMES, SYSTEM, Strategy, VertexPriorityGame, opponent, priority_winner,
)
from semgame.rewards import progress
from semgame.trueness import value


log = logging.getLogger(__name__)


SIResult = namedtuple('SIResult', 'winner strategy iterations improvements eval_steps immediate')


def init_random(game, seed):
    """Independent uniform choices for every vertex of both players."""
    rng = np.random.default_rng(seed)
    choices = {SYSTEM: {}, ENVIRONMENT: {}}
    for vertex in range(len(game)):
        outgoing = game.outgoing[vertex]
        choices[game.owner(vertex)][vertex] = outgoing[int(rng.integers(len(outgoing)))]
    return Strategy(SYSTEM, choices[SYSTEM]), Strategy(ENVIRONMENT, choices[ENVIRONMENT])


def init_trueness(game):
    """Trueness-optimal strategies for both players.

    The system maximises the trueness of the successor's master formula and
    the environment minimises it; ties go to the better monitor progress for
    the owner, then to the smallest target.
    """
    choices = {SYSTEM: {}, ENVIRONMENT: {}}
    for vertex in range(len(game)):
        owner = game.owner(vertex)
        sign = 1 if owner == SYSTEM else -1
        ranked = []
        for index in game.outgoing[vertex]:
            target = game.target(index)
            master = game.master(target)
            if master is None:
                raise LabellingError(target)
            ranked.append((-sign * value(master), -sign * progress(game, index), target, index))
        choices[owner][vertex] = min(ranked)[-1]
    return Strategy(SYSTEM, choices[SYSTEM]), Strategy(ENVIRONMENT, choices[ENVIRONMENT])


class Valuation(object):
    """Optimal counter-strategy valuation of one player's strategy."""

    def __init__(self, view, player, choices):
        self.view = view
        self.player = player
        size = len(view)
        order = sorted(range(size), key=lambda vertex: (view.priority[vertex], vertex))
        self.relevance = [0] * size
        for rank, vertex in enumerate(order):
            self.relevance[vertex] = rank
        self.successors = [
            [choices[vertex]] if view.owner[vertex] == player and vertex in choices else list(view.successors[vertex])
            for vertex in range(size)
        ]
        self.leader = [None] * size
        self.passed = [0] * size
        self.distance = [0] * size
        self._compute(order)

    def good(self, vertex):
        return priority_winner(self.view.priority[vertex]) == self.player

    def reward(self, vertex):
        rank = self.relevance[vertex] + 1
        return rank if self.good(vertex) else -rank

    def weight(self, vertex):
        return 2 ** self.relevance[vertex] if self.good(vertex) else -(2 ** self.relevance[vertex])

    def key(self, vertex):
        leader = self.leader[vertex]
        distance = self.distance[vertex]
        return (self.reward(leader), self.passed[vertex], -distance if self.good(leader) else distance)

    def _predecessors(self, members, successors):
        predecessors = {vertex: [] for vertex in members}
        for vertex in members:
            for successor in successors[vertex]:
                if successor in predecessors:
                    predecessors[successor].append(vertex)
        return predecessors

    def _reaching(self, members, successors, target, avoid=None):
        """Vertices of `members` with a path to `target` that avoids `avoid`."""
        predecessors = self._predecessors(members, successors)
        found = {target}
        pending = deque([target])
        while pending:
            vertex = pending.popleft()
            for predecessor in predecessors[vertex]:
                if predecessor not in found and predecessor != avoid:
                    found.add(predecessor)
                    pending.append(predecessor)
        return found

    def _on_cycle(self, members, vertex):
        bound = self.relevance[vertex]
        allowed = {member for member in members if self.relevance[member] <= bound}
        seen = set()
        pending = [vertex]
        while pending:
            current = pending.pop()
            for successor in self.successors[current]:
                if successor == vertex:
                    return True
                if successor in allowed and successor not in seen:
                    seen.add(successor)
                    pending.append(successor)
        return False

    def _compute(self, order):
        remaining = set(range(len(self.view)))
        for leader in sorted(order, key=self.reward):
            if leader not in remaining or not self._on_cycle(remaining, leader):
                continue
            claimed = self._reaching(remaining, self.successors, leader)
            for vertex in claimed:
                self.successors[vertex] = [successor for successor in self.successors[vertex]
                                           if successor in claimed]
            self._subvaluation(claimed, leader)
            remaining -= claimed
        if remaining:
            raise SolverError('{} vertices left without a valuation'.format(len(remaining)))

    def _subvaluation(self, members, leader):
        successors = self.successors
        for vertex in members:
            self.leader[vertex] = leader
        bound = self.relevance[leader]
        higher = sorted((vertex for vertex in members if self.relevance[vertex] > bound),
                        key=lambda vertex: self.relevance[vertex], reverse=True)
        for passed in higher:
            if self.good(passed):
                avoiding = self._reaching(members, successors, leader, avoid=passed)
                for vertex in members - avoiding:
                    self.passed[vertex] += self.weight(passed)
                for vertex in avoiding | {passed}:
                    successors[vertex] = [successor for successor in successors[vertex] if successor in avoiding]
            else:
                reaching = self._reaching(members - {leader}, successors, passed)
                for vertex in reaching:
                    self.passed[vertex] += self.weight(passed)
                for vertex in reaching - {passed}:
                    successors[vertex] = [successor for successor in successors[vertex] if successor in reaching]
        self._distances(members, leader)

    def _distances(self, members, leader):
        if self.good(leader):
            distance = self._longest(members, leader)
        else:
            distance = self._shortest(members, leader)
        for vertex in members:
            if vertex != leader:
                self.distance[vertex] = distance[vertex]

    def _shortest(self, members, leader):
        predecessors = self._predecessors(members, self.successors)
        distance = {leader: 0}
        pending = deque([leader])
        while pending:
            vertex = pending.popleft()
            for predecessor in predecessors[vertex]:
                if predecessor not in distance:
                    distance[predecessor] = distance[vertex] + 1
                    pending.append(predecessor)
        return distance

    def _longest(self, members, leader):
        # without the edges into the leader the remaining graph is acyclic
        inner = {vertex: [successor for successor in self.successors[vertex] if successor != leader]
                 for vertex in members}
        distance = {leader: 0}
        for root in members:
            if root in distance:
                continue
            stack = [(root, iter(inner[root]))]
            active = {root}
            while stack:
                vertex, children = stack[-1]
                child = next(children, None)
                if child is None:
                    stack.pop()
                    active.discard(vertex)
                    distance[vertex] = max(distance[successor] + 1 for successor in self.successors[vertex])
                elif child in active:
                    raise SolverError('cycle through vertex {} avoids its leader'.format(child))
                elif child not in distance:
                    stack.append((child, iter(inner[child])))
                    active.add(child)
        return distance


def improve(view, strategy, valuation):
    """Switches every choice with a strictly better successor; None if optimal."""
    choices = view.choices(strategy)
    switched = dict(choices)
    changed = False
    for vertex, current in choices.items():
        best = max(view.successors[vertex], key=lambda successor: (valuation.key(successor), -successor))
        if valuation.key(best) > valuation.key(current):
            switched[vertex] = best
            changed = True
    if not changed:
        return None
    return view.strategy(strategy.player, switched)


def strategy_improvement(game, initial, deadline=None):
    """Improves both players' strategies in turn until one of them wins.

    `initial` is a (system, environment) pair of strategies; `deadline` is an
    optional `time.monotonic()` value checked between rounds.
    """
    view = VertexPriorityGame(game)
    strategies = {SYSTEM: initial[0], ENVIRONMENT: initial[1]}
    stuck = set()
    iterations = improvements = 0
    turn = SYSTEM
    while True:
        iterations += 1
        for player in (SYSTEM, ENVIRONMENT):
            if analysis.check_winning(game, strategies[player]):
                log.debug('%s wins after %d rounds', PLAYER_NAMES[player], iterations)
                return SIResult(player, strategies[player], iterations, improvements,
                                iterations * len(game), iterations == 1)
        if deadline is not None and time.monotonic() > deadline:
            raise DeadlineExceeded(iterations * len(game))
        for player in (turn, opponent(turn)):
            if player in stuck:
                continue
            valuation = Valuation(view, player, view.choices(strategies[player]))
            improved = improve(view, strategies[player], valuation)
            if improved is None:
                stuck.add(player)
                continue
            strategies[player] = improved
            improvements += 1
            break
        else:
            raise SolverError('no strategy improves and none wins from the start vertex')
        turn = opponent(turn)
