from fractions import Fraction
from unittest import TestCase

from nose.tools import istest

from semgame import ltl
from semgame.construction import SYS_FIRST, build_game
from semgame.errors import LabellingError
from semgame.parser import parse
from semgame.rewards import (
    PRI, SEM, WIN, PriorityScaling, init_q, progress, reward, scale_priorities, sink_targets,
)
from .utils import example_game


def delayed_recurrence_game():
    return build_game('G F (a & X b)', (), ('a', 'b'))


def edge_between_monitors(game, before, after):
    for index, edge in enumerate(game.edges):
        if (game.labelling(edge.source).monitors == before and game.labelling(edge.target).monitors == after
                and edge.priority == 0):
            return index
    raise AssertionError('no such edge')


class PriorityScalingTest(TestCase):
    @istest
    def rescales_priorities_above_all_lower_ones(self):
        scaling = PriorityScaling({1: 2, 2: 1})

        self.assertEqual(scaling.scaled, [1, 5])
        self.assertEqual(scaling.rewards, [Fraction(1, 8), Fraction(-5, 8)])
        self.assertEqual(scaling.reward(2), -0.625)

    @istest
    def normalises_a_single_priority(self):
        self.assertEqual(PriorityScaling({1: 3}).rewards, [Fraction(1, 4)])

    @istest
    def punishes_even_priorities(self):
        scaling = PriorityScaling({0: 4, 2: 3, 4: 1})

        self.assertTrue(all(reward <= 0 for reward in scaling.rewards))
        self.assertEqual(scaling.violations(), [])

    @istest
    def counts_priorities_on_edges(self):
        scaling = scale_priorities(example_game())

        self.assertEqual(scaling.priorities, [1, 2, 3, 4, 5])
        self.assertEqual(scaling.frequencies, [2, 2, 2, 3, 1])

    @istest
    def satisfies_dominance_on_built_games(self):
        for formula in ('G F (a & X b)', 'G (a | X b)', 'F G a | F (b & X b)', 'G b & (G F a | F G c)'):
            game = build_game(formula, ('b',), tuple(sorted(ltl.atoms(parse(formula)) - {'b'})))

            self.assertEqual(scale_priorities(game).violations(), [], formula)


class ProgressTest(TestCase):
    @istest
    def measures_monitor_progress_without_events(self):
        game = delayed_recurrence_game()
        index = edge_between_monitors(game, ((parse('a & X b'),),), ((ltl.atom('b'),),))

        self.assertEqual(progress(game, index), 0.25)

    @istest
    def ignores_monitors_below_the_deciding_one(self):
        game = delayed_recurrence_game()
        index = next(index for index, edge in enumerate(game.edges) if edge.priority == 1)

        self.assertEqual(progress(game, index), 0.0)

    @istest
    def needs_labelled_games(self):
        with self.assertRaises(LabellingError):
            progress(example_game(), 0)


class RewardTest(TestCase):
    @istest
    def gives_nothing_to_interior_edges_when_learning_wins(self):
        game = delayed_recurrence_game()

        self.assertEqual(reward(game, 0, WIN), 0.0)

    @istest
    def follows_scaled_priorities(self):
        game = example_game()
        scaling = scale_priorities(game)

        self.assertEqual(reward(game, 2, PRI, scaling), float(scaling.rewards[3]))

    @istest
    def adds_weighted_progress(self):
        game = delayed_recurrence_game()
        scaling = scale_priorities(game)
        index = edge_between_monitors(game, ((parse('a & X b'),),), ((ltl.atom('b'),),))

        self.assertEqual(reward(game, index, PRI, scaling), 0.0)
        self.assertEqual(reward(game, index, SEM, scaling), 0.125)
        self.assertEqual(reward(game, index, SEM, scaling, sem_weight=1.0), 0.25)

    @istest
    def reduces_to_priorities_without_monitors(self):
        game = build_game('G (a | X b)', ('a',), ('b',))
        scaling = scale_priorities(game)

        for index in range(len(game.edges)):
            self.assertEqual(reward(game, index, SEM, scaling), reward(game, index, PRI, scaling))


class InitialQTest(TestCase):
    @istest
    def pins_edges_into_sinks(self):
        game = build_game('G a', (), ('a',))

        pinned = sink_targets(game)

        self.assertTrue(pinned)
        self.assertTrue(all(value == -1.0 for value in pinned.values()))

    @istest
    def starts_from_zero_for_priority_rewards(self):
        game = build_game('F a', (), ('a',))

        qtable = init_q(game, PRI)

        for index, edge in enumerate(game.edges):
            expected = 1.0 if game.sink_value(edge.target) else 0.0
            self.assertEqual(qtable[index], expected)

    @istest
    def maps_successor_trueness_for_semantic_rewards(self):
        game = build_game('F a & X b', (), ('a', 'b'))

        qtable = init_q(game, SEM)

        for index, edge in enumerate(game.edges):
            master = game.master(edge.target)
            if master is ltl.TRUE:
                self.assertEqual(qtable[index], 1.0)
            elif master is ltl.FALSE:
                self.assertEqual(qtable[index], -1.0)
            elif master is parse('F a'):
                self.assertEqual(qtable[index], 0.0)

    @istest
    def values_half_moves_by_the_best_answer(self):
        game = build_game('F (a & b)', ('a',), ('b',))

        qtable = init_q(game, SEM)

        first = {game.edges[index].move: qtable[index] for index in game.outgoing[game.start]}
        self.assertEqual(first[(('a', True),)], 1.0)
        self.assertLess(first[(('a', False),)], 1.0)
        self.assertGreater(first[(('a', False),)], -1.0)

    @istest
    def lets_the_environment_pick_the_least_true_answer(self):
        game = build_game('G (a | b)', ('a',), ('b',), order=SYS_FIRST)

        qtable = init_q(game, SEM)

        first = {game.edges[index].move: qtable[index] for index in game.outgoing[game.start]}
        self.assertEqual(first[(('b', False),)], -1.0)
        self.assertGreater(first[(('b', True),)], -1.0)

    @istest
    def needs_labels_for_semantic_rewards(self):
        with self.assertRaises(LabellingError):
            init_q(example_game(), SEM)

    @istest
    def refuses_unknown_variants(self):
        with self.assertRaises(ValueError):
            init_q(example_game(), 'greedy')
