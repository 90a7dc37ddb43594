from fractions import Fraction
from unittest import TestCase

from nose.tools import istest

from semgame import analysis, ltl
from semgame.game import ENVIRONMENT, SYSTEM, Edge, Labelling, LabelledParityGame, Lasso, Strategy, Vertex
from .utils import example_game


def winning_system_strategy(game):
    return Strategy.from_targets(game, SYSTEM, {0: 2, 2: 3, 4: 4})


class LassoWinnerTest(TestCase):
    @istest
    def lets_the_system_win_on_odd_cycle(self):
        game = example_game()

        self.assertEqual(analysis.lasso_winner(game, Lasso((0, 2), (3,))), SYSTEM)

    @istest
    def lets_the_environment_win_on_even_cycle(self):
        game = example_game()

        self.assertEqual(analysis.lasso_winner(game, Lasso((), (1, 2))), ENVIRONMENT)
        self.assertEqual(analysis.lasso_winner(game, Lasso((), (0,))), ENVIRONMENT)

    @istest
    def reads_priorities_along_the_cycle(self):
        self.assertEqual(analysis.cycle_priorities(example_game(), Lasso((0,), (1, 2))), [2, 1])

    @istest
    def lets_owners_pick_among_parallel_edges(self):
        for owner, priorities, expected in [
            (SYSTEM, (2, 1), SYSTEM),
            (ENVIRONMENT, (1, 2), ENVIRONMENT),
            (ENVIRONMENT, (3, 1), SYSTEM),
            (SYSTEM, (2, 4), ENVIRONMENT),
        ]:
            game = LabelledParityGame([Vertex(0, owner, None)],
                                      [Edge(0, 0, priority, ()) for priority in priorities], 0)

            self.assertEqual(analysis.lasso_winner(game, Lasso((), (0,))), expected, priorities)

    @istest
    def picks_the_owner_priority_on_each_step(self):
        game = LabelledParityGame(
            [Vertex(0, SYSTEM, None), Vertex(1, ENVIRONMENT, None)],
            [Edge(0, 1, 4, ()), Edge(0, 1, 3, ()), Edge(1, 0, 1, ()), Edge(1, 0, 2, ())], 0)

        self.assertEqual(analysis.cycle_priorities(game, Lasso((), (0, 1))), [3, 2])
        self.assertEqual(analysis.lasso_winner(game, Lasso((), (0, 1))), SYSTEM)

    @istest
    def refuses_steps_without_an_edge(self):
        with self.assertRaises(KeyError):
            analysis.step_priority(example_game(), 0, 3)

    @istest
    def refuses_empty_cycles(self):
        with self.assertRaises(ValueError):
            analysis.lasso_winner(example_game(), Lasso((0,), ()))


class CheckWinningTest(TestCase):
    @istest
    def accepts_winning_strategy_on_example_game(self):
        game = example_game()

        self.assertTrue(analysis.check_winning(game, winning_system_strategy(game)))

    @istest
    def rejects_strategy_that_stays_on_even_loop(self):
        game = example_game()
        strategy = Strategy.from_targets(game, SYSTEM, {0: 0, 2: 3, 4: 4})

        self.assertFalse(analysis.check_winning(game, strategy))

    @istest
    def rejects_environment_strategy_on_example_game(self):
        game = example_game()
        strategy = Strategy.from_targets(game, ENVIRONMENT, {1: 3, 3: 3})

        self.assertFalse(analysis.check_winning(game, strategy))

    @istest
    def ignores_unreachable_cycles(self):
        vertices = [Vertex(0, SYSTEM, None), Vertex(1, ENVIRONMENT, None), Vertex(2, SYSTEM, None)]
        edges = [Edge(0, 1, 1, ()), Edge(1, 0, 1, ()), Edge(2, 2, 6, ()), Edge(2, 0, 0, ())]
        game = LabelledParityGame(vertices, edges, 0)

        self.assertTrue(analysis.check_winning(game, Strategy(SYSTEM, {0: 0, 2: 2})))

    @istest
    def accepts_strategy_into_a_true_sink(self):
        vertices = [Vertex(0, SYSTEM, Labelling(ltl.atom('a'), ())), Vertex(1, ENVIRONMENT, Labelling(ltl.TRUE, ())),
                    Vertex(2, ENVIRONMENT, Labelling(ltl.FALSE, ()))]
        edges = [Edge(0, 1, 0, ()), Edge(0, 2, 0, ()), Edge(1, 1, 1, ()), Edge(2, 2, 2, ())]
        game = LabelledParityGame(vertices, edges, 0)

        self.assertTrue(analysis.check_winning(game, Strategy(SYSTEM, {0: 0})))
        self.assertFalse(analysis.check_winning(game, Strategy(SYSTEM, {0: 1})))


class SolutionSizeTest(TestCase):
    @istest
    def counts_reachable_vertices(self):
        game = example_game()

        self.assertEqual(analysis.reachable(game, winning_system_strategy(game)), {0, 2, 3, 4})
        self.assertEqual(analysis.solution_size(game, winning_system_strategy(game)), Fraction(4, 5))

    @istest
    def lets_the_opponent_move_freely(self):
        game = example_game()
        strategy = Strategy.from_targets(game, SYSTEM, {0: 1, 2: 3, 4: 4})

        self.assertEqual(analysis.solution_size(game, strategy), 1)
