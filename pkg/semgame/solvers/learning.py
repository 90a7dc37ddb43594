"""Tabular Q-learning on parity games.

Episodes walk from the start vertex until a vertex repeats. The closed loop
decides the value of its closing edge (+1 when the system wins it, -1
otherwise); the rest of the path is updated backwards, maximising at system
vertices and minimising at environment vertices.
"""
from collections import namedtuple
import logging
import time

import numpy as np

from semgame import analysis
from semgame.errors import DeadlineExceeded
from semgame.game import ENVIRONMENT, PLAYER_NAMES, SYSTEM, Strategy, priority_winner
from semgame.rewards import PRI, SEM, VARIANTS, init_q, reward, scale_priorities, sink_targets


log = logging.getLogger(__name__)


LearnerConfig = namedtuple(
    'LearnerConfig', 'alpha epsilon check_period budget seed variant sem_weight deadline',
    defaults=(0.1, 0.1, 10, 100000, 0, SEM, 0.5, None))

Episode = namedtuple('Episode', 'vertices edges loop')

LearningResult = namedtuple('LearningResult', 'winner strategy eval_steps episodes checks qtable')


def validate_config(config):
    if not 0 < config.alpha <= 1:
        raise ValueError('alpha must lie in (0, 1]')
    if not 0 <= config.epsilon <= 1:
        raise ValueError('epsilon must lie in [0, 1]')
    if config.check_period < 1:
        raise ValueError('check period must be positive')
    if config.budget < 1:
        raise ValueError('budget must be positive')
    if config.variant not in VARIANTS:
        raise ValueError('unknown reward variant {!r}'.format(config.variant))


def _optimal(values, owner):
    return values.max() if owner == SYSTEM else values.min()


def sample_episode(game, qtable, rng, epsilon=0.0):
    """Epsilon-greedy walk from the start until the first repeated vertex.

    `loop` is the position in `vertices` where the closing edge, the last
    one in `edges`, returns to.
    """
    vertices = [game.start]
    edges = []
    seen = {game.start: 0}
    vertex = game.start
    while True:
        outgoing = game.outgoing[vertex]
        if rng.random() < epsilon:
            index = outgoing[int(rng.integers(len(outgoing)))]
        else:
            values = qtable[outgoing]
            best = _optimal(values, game.owner(vertex))
            candidates = [choice for choice, quality in zip(outgoing, values) if quality == best]
            index = candidates[int(rng.integers(len(candidates)))] if len(candidates) > 1 else candidates[0]
        edges.append(index)
        vertex = game.target(index)
        if vertex in seen:
            return Episode(vertices, edges, seen[vertex])
        seen[vertex] = len(vertices)
        vertices.append(vertex)


def update(old, target, alpha):
    return min(1.0, max(-1.0, (1 - alpha) * old + alpha * target))


def greedy_strategy(game, qtable, player):
    """Best edge per vertex of `player`; ties go to the smallest target."""
    choices = {}
    for vertex in game.vertices_of(player):
        outgoing = game.outgoing[vertex]
        best = _optimal(qtable[outgoing], player)
        choices[vertex] = min((game.target(index), index) for index in outgoing if qtable[index] == best)[1]
    return Strategy(player, choices)


class Learner(object):
    def __init__(self, game, config, qtable=None):
        validate_config(config)
        self.game = game
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        self.qtable = init_q(game, config.variant) if qtable is None else np.array(qtable, dtype=float)
        self.pinned = sink_targets(game)
        scaling = scale_priorities(game) if config.variant in (PRI, SEM) else None
        self.rewards = np.array([reward(game, index, config.variant, scaling, config.sem_weight)
                                 for index in range(len(game.edges))])
        self.eval_steps = 0
        self.episodes = 0
        self.checks = 0

    def learn_from(self, episode):
        game, qtable, alpha = self.game, self.qtable, self.config.alpha
        cycle = episode.edges[episode.loop:]
        won = priority_winner(max(game.edges[index].priority for index in cycle)) == SYSTEM
        closing = episode.edges[-1]
        if closing not in self.pinned:
            qtable[closing] = update(qtable[closing], 1.0 if won else -1.0, alpha)
        for position in reversed(range(len(episode.edges) - 1)):
            index = episode.edges[position]
            if index in self.pinned:
                continue
            successor = episode.vertices[position + 1]
            future = _optimal(qtable[game.outgoing[successor]], game.owner(successor))
            qtable[index] = update(qtable[index], self.rewards[index] + future, alpha)

    def check(self):
        self.checks += 1
        for player in (SYSTEM, ENVIRONMENT):
            strategy = greedy_strategy(self.game, self.qtable, player)
            if analysis.check_winning(self.game, strategy):
                return strategy
        return None

    def run(self):
        config = self.config
        while self.eval_steps < config.budget:
            if config.deadline is not None and time.monotonic() > config.deadline:
                raise DeadlineExceeded(self.eval_steps)
            episode = sample_episode(self.game, self.qtable, self.rng, config.epsilon)
            self.eval_steps += len(episode.vertices) + 1
            self.episodes += 1
            self.learn_from(episode)
            if self.episodes % config.check_period == 0:
                strategy = self.check()
                if strategy is not None:
                    log.debug('greedy %s strategy wins after %d episodes',
                              PLAYER_NAMES[strategy.player], self.episodes)
                    return self.result(strategy.player, strategy)
        log.debug('budget of %d steps exhausted after %d episodes', config.budget, self.episodes)
        return self.result(None, None)

    def result(self, winner, strategy):
        return LearningResult(winner, strategy, self.eval_steps, self.episodes, self.checks, self.qtable)


def learn(game, config=LearnerConfig(), qtable=None):
    """Learns until a greedy strategy wins or the step budget is spent.

    A result without winner means the budget ran out.
    """
    return Learner(game, config, qtable).run()
