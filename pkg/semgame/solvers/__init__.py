from collections import namedtuple
import logging

from semgame.game import PLAYER_NAMES
from semgame.rewards import PRI, SEM, WIN
from semgame.solvers.improvement import init_random, init_trueness, strategy_improvement
from semgame.solvers.learning import LearnerConfig, learn


log = logging.getLogger(__name__)


SI = 'si'
SI_SEM = 'si-sem'
QL_WIN = 'ql-win'
QL_PRI = 'ql-pri'
QL_SEM = 'ql-sem'
ALGORITHMS = (SI, SI_SEM, QL_WIN, QL_PRI, QL_SEM)
LEARNING_VARIANTS = {
    QL_WIN: WIN,
    QL_PRI: PRI,
    QL_SEM: SEM,
}


Outcome = namedtuple('Outcome', 'algorithm winner strategy eval_steps iterations immediate checks')


def solve(game, algorithm, seed=0, deadline=None, learner_config=None):
    """Runs one of ALGORITHMS; `winner` is None when learning ran out of budget."""
    if algorithm in (SI, SI_SEM):
        initial = init_random(game, seed) if algorithm == SI else init_trueness(game)
        result = strategy_improvement(game, initial, deadline=deadline)
        outcome = Outcome(algorithm, result.winner, result.strategy, result.eval_steps,
                          result.iterations, result.immediate, None)
    elif algorithm in LEARNING_VARIANTS:
        config = (learner_config or LearnerConfig())._replace(
            seed=seed, variant=LEARNING_VARIANTS[algorithm], deadline=deadline)
        result = learn(game, config)
        outcome = Outcome(algorithm, result.winner, result.strategy, result.eval_steps,
                          result.episodes, None, result.checks)
    else:
        raise ValueError('unknown algorithm {!r}'.format(algorithm))
    log.info('%s: %s after %d evaluation steps', algorithm,
             PLAYER_NAMES.get(outcome.winner, 'no winner'), outcome.eval_steps)
    return outcome
