"""Reward signals and initial Q values for learning on labelled games."""
from collections import Counter
from fractions import Fraction

import numpy as np

from semgame.construction import monitor_position
from semgame.errors import LabellingError
from semgame.game import SYSTEM
from semgame.trueness import minimum_value, value


WIN = 'win'
PRI = 'pri'
SEM = 'sem'
VARIANTS = (WIN, PRI, SEM)


class PriorityScaling(object):
    """Priorities rescaled so that each one outweighs all lower ones together.

    With the distinct priorities p_0 < p_1 < ... occurring f_i times,
    the scaled values are p_0 and 2 * f_{i-1} * scaled_{i-1} + 1, and the
    rewards are the scaled values normalised into (-1, 1), positive for odd
    priorities.
    """

    def __init__(self, frequencies):
        self.priorities = sorted(frequencies)
        self.frequencies = [frequencies[priority] for priority in self.priorities]
        self.scaled = []
        for position, priority in enumerate(self.priorities):
            if position == 0:
                self.scaled.append(priority)
            else:
                self.scaled.append(2 * self.frequencies[position - 1] * self.scaled[position - 1] + 1)
        normaliser = 1 + sum(scaled * frequency for scaled, frequency in zip(self.scaled, self.frequencies))
        self.rewards = [Fraction(scaled if priority % 2 == 1 else -scaled, normaliser)
                        for priority, scaled in zip(self.priorities, self.scaled)]
        self._floats = {priority: float(reward) for priority, reward in zip(self.priorities, self.rewards)}

    def reward(self, priority):
        return self._floats[priority]

    def violations(self):
        found = []
        for position, scaled in enumerate(self.scaled):
            below = sum(self.scaled[j] * self.frequencies[j] for j in range(position))
            if position and scaled <= below:
                found.append('scaled priority {} does not dominate'.format(self.priorities[position]))
        for priority, reward in zip(self.priorities, self.rewards):
            if not abs(reward) < 1:
                found.append('reward of priority {} is out of range'.format(priority))
            if reward and (reward > 0) != (priority % 2 == 1):
                found.append('reward of priority {} has the wrong sign'.format(priority))
        return found


def scale_priorities(game):
    return PriorityScaling(Counter(edge.priority for edge in game.edges))


def _require_labelling(game, vertex):
    labelling = game.labelling(vertex)
    if labelling is None:
        raise LabellingError(vertex)
    return labelling


def progress(game, edge_index):
    """Best trueness gain over the monitors ranked above the deciding one."""
    edge = game.edges[edge_index]
    source = _require_labelling(game, edge.source).monitors
    target = _require_labelling(game, edge.target).monitors
    count = max(len(source), len(target))
    decisive = monitor_position(edge.priority, count)
    gains = []
    for position in range(decisive + 1, count):
        before = source[position] if position < len(source) else ()
        after = target[position] if position < len(target) else ()
        gains.append(minimum_value(after) - minimum_value(before))
    return max(gains, default=0.0)


def reward(game, edge_index, variant, scaling=None, sem_weight=0.5):
    if variant == WIN:
        return 0.0
    priority_reward = scaling.reward(game.edges[edge_index].priority)
    if variant == PRI:
        return priority_reward
    total = priority_reward + sem_weight * progress(game, edge_index)
    return min(1.0, max(-1.0, total))


def sink_targets(game):
    """Q values fixed on edges into tt (+1) and ff (-1) sinks."""
    pinned = {}
    for index, edge in enumerate(game.edges):
        sink = game.sink_value(edge.target)
        if sink is not None:
            pinned[index] = 1.0 if sink else -1.0
    return pinned


def _master_value(game, vertex):
    return 2.0 * value(_require_labelling(game, vertex).master) - 1.0


def best_response_values(game):
    """Per vertex, the trueness its owner reaches in one move, scaled to [-1, 1].

    The system picks the successor with the truest master, the environment
    the least true one. Half-move vertices share their master with the
    vertex before them, so this is what tells their edges apart.
    """
    successors = [_master_value(game, vertex) for vertex in range(len(game))]
    values = np.empty(len(game))
    for vertex in range(len(game)):
        options = [successors[game.target(index)] for index in game.outgoing[vertex]]
        values[vertex] = max(options) if game.owner(vertex) == SYSTEM else min(options)
    return values


def init_q(game, variant):
    """Initial Q table; semantic learners start from the best response trueness
    of each edge's target, the others from zero."""
    if variant not in VARIANTS:
        raise ValueError('unknown reward variant {!r}'.format(variant))
    if variant == SEM:
        values = best_response_values(game)
        qtable = np.array([values[edge.target] for edge in game.edges])
    else:
        qtable = np.zeros(len(game.edges))
    for index, pinned in sink_targets(game).items():
        qtable[index] = pinned
    return qtable
