#!/usr/bin/env python

import argparse
import json
import logging
import os
import sys

from tornado.log import LogFormatter

from semgame import analysis, bench, generator
from semgame.construction import DEFAULT_MAX_VERTICES, ENV_FIRST, SYS_FIRST, build_game
from semgame.errors import SemgameError
from semgame.game import PLAYER_NAMES
from semgame.serialization import load, store
from semgame.solvers import ALGORITHMS, SI, SI_SEM, solve
from semgame.solvers.learning import LearnerConfig


log = logging.getLogger('semgame')

ERROR_STATUS = 2


def _names(text):
    return tuple(name.strip() for name in text.split(',') if name.strip())


def _algorithms(text):
    names = _names(text)
    unknown = [name for name in names if name not in ALGORITHMS]
    if unknown:
        raise argparse.ArgumentTypeError('unknown algorithms: {}'.format(', '.join(unknown)))
    return names


def create_options_from_arguments(args):
    defaults = LearnerConfig()
    suite = bench.SuiteConfig()
    parser = argparse.ArgumentParser(description="Semantically labelled parity games from LTL")
    parser.add_argument('-v', '--verbose', action='store_const', dest='log_level', const=logging.DEBUG,
                        default=logging.INFO, help='Log solver progress.')
    parser.add_argument('-q', '--quiet', action='store_const', dest='log_level', const=logging.WARNING,
                        help='Log warnings and errors only.')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    build = commands.add_parser('build', help='Build a labelled game from an LTL formula.')
    build.add_argument('--ltl', required=True,
                       help='Formula text, or a file containing it.')
    build.add_argument('--inputs', type=_names, default=(), help='Comma separated environment propositions.')
    build.add_argument('--outputs', type=_names, default=(), help='Comma separated system propositions.')
    build.add_argument('--order', choices=(ENV_FIRST, SYS_FIRST), default=ENV_FIRST,
                       help='Which player moves first in every step. "{}" by default.'.format(ENV_FIRST))
    build.add_argument('--max-vertices', type=int, default=DEFAULT_MAX_VERTICES, dest='max_vertices',
                       help='Vertex budget. {} by default.'.format(DEFAULT_MAX_VERTICES))
    build.add_argument('-o', '--output', required=True, help='Where to write the game.')

    solve_command = commands.add_parser('solve', help='Solve a stored game.')
    solve_command.add_argument('game', help='Game file.')
    solve_command.add_argument('--algo', choices=ALGORITHMS, default=SI, dest='algorithm')
    solve_command.add_argument('--seed', type=int, default=0)
    solve_command.add_argument('--alpha', type=float, default=defaults.alpha)
    solve_command.add_argument('--epsilon', type=float, default=defaults.epsilon)
    solve_command.add_argument('--check-period', type=int, default=defaults.check_period, dest='check_period')
    solve_command.add_argument('--budget', type=int, default=defaults.budget,
                               help='Evaluation step budget of the learners. {} by default.'.format(defaults.budget))
    solve_command.add_argument('--sem-weight', type=float, default=defaults.sem_weight, dest='sem_weight')

    bench_command = commands.add_parser('bench', help='Run a benchmark suite over generated formulae.')
    bench_command.add_argument('--class', choices=sorted(generator.CLASSES), default='safety', dest='family')
    bench_command.add_argument('--count', type=int, default=10)
    bench_command.add_argument('--size', type=int, default=generator.DEFAULT_SIZE)
    bench_command.add_argument('--atoms', type=int, default=generator.DEFAULT_ATOMS)
    bench_command.add_argument('--algos', type=_algorithms, default=ALGORITHMS, dest='algorithms',
                               help='Comma separated algorithms, all by default.')
    bench_command.add_argument('--runs', type=int, default=suite.runs)
    bench_command.add_argument('--timeout', type=float, default=suite.timeout,
                               help='Seconds per run. {} by default.'.format(suite.timeout))
    bench_command.add_argument('--seed', type=int, default=suite.seed)
    bench_command.add_argument('--workers', type=int, default=suite.workers)
    bench_command.add_argument('--max-vertices', type=int, default=suite.max_vertices, dest='max_vertices')
    bench_command.add_argument('--wall-time', action='store_true', default=False, dest='wall_time',
                               help='Record wall time, which makes the output differ between runs.')
    bench_command.add_argument('-o', '--output', required=True, help='CSV file to write.')

    report = commands.add_parser('report', help='Summarise a benchmark CSV.')
    report.add_argument('results', help='CSV written by "bench".')
    report.add_argument('--plot-dir', dest='plot_dir', default=None,
                        help='Directory for step distribution files.')

    options = parser.parse_args(args)
    return options


def configure_logging(level):
    if not any(isinstance(handler.formatter, LogFormatter) for handler in log.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(LogFormatter())
        log.addHandler(handler)
    log.setLevel(level)


def read_formula(text):
    if os.path.isfile(text):
        with open(text, encoding='utf-8') as source:
            return source.read().strip()
    return text


def run_build(options):
    game = build_game(read_formula(options.ltl), options.inputs, options.outputs,
                      options.order, options.max_vertices)
    store(game, options.output)
    print('{} vertices, {} edges written to {}'.format(len(game), len(game.edges), options.output))


def run_solve(options):
    game = load(options.game)
    config = LearnerConfig(alpha=options.alpha, epsilon=options.epsilon, check_period=options.check_period,
                           budget=options.budget, sem_weight=options.sem_weight)
    outcome = solve(game, options.algorithm, options.seed, learner_config=config)
    summary = {
        'algo': options.algorithm,
        'winner': PLAYER_NAMES.get(outcome.winner),
        'iterations': outcome.iterations,
        'eval_steps': outcome.eval_steps,
        'solution_size': None,
    }
    if outcome.winner is not None:
        summary['solution_size'] = float(analysis.solution_size(game, outcome.strategy))
    if options.algorithm in (SI, SI_SEM):
        summary['immediate'] = outcome.immediate
    else:
        summary['checks'] = outcome.checks
    print('winner: {}'.format(summary['winner'] or 'none (budget exhausted)'))
    for key in ('iterations', 'eval_steps', 'solution_size', 'immediate', 'checks'):
        if key in summary and summary[key] is not None:
            print('{}: {}'.format(key, summary[key]))
    print(json.dumps(summary, sort_keys=True))


def run_bench(options):
    spec = generator.CLASSES[options.family]._replace(size=options.size, atoms=options.atoms)
    models, skipped = bench.collect_models(spec, options.count, options.seed, options.max_vertices)
    config = bench.SuiteConfig(runs=options.runs, timeout=options.timeout, seed=options.seed,
                               workers=options.workers, max_vertices=options.max_vertices,
                               wall_time=options.wall_time)
    result = bench.run_suite(models, options.algorithms, config)
    bench.write_csv(result.records, options.output, wall_time=options.wall_time)
    for model_id, reason in skipped + result.filtered:
        print('filtered {}: {}'.format(model_id, reason))
    print('{} records written to {}'.format(len(result.records), options.output))


def run_report(options):
    records = bench.read_csv(options.results)
    sys.stdout.write(bench.format_report(records))
    if options.plot_dir:
        for path in bench.write_distributions(records, options.plot_dir):
            print('wrote {}'.format(path))


COMMANDS = {
    'build': run_build,
    'solve': run_solve,
    'bench': run_bench,
    'report': run_report,
}


def execute(options):
    try:
        COMMANDS[options.command](options)
    except SemgameError as error:
        log.error('%s', error)
        return ERROR_STATUS
    except (OSError, ValueError) as error:
        log.error('%s', error)
        return ERROR_STATUS
    return 0


def main():
    options = create_options_from_arguments(sys.argv[1:])
    configure_logging(options.log_level)
    sys.exit(execute(options))


if __name__ == '__main__':  # pragma: no cover
    main()
