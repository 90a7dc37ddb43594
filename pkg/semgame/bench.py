"""Benchmark suites: solver runs over generated models, CSV results and
summaries."""
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
import csv
from datetime import timedelta
import itertools
import logging
import os
import time

import numpy as np
from tabulate import tabulate
from tornado import gen
from tornado.ioloop import IOLoop
from tornado.locks import Semaphore

from semgame import analysis, caches, generator
from semgame.construction import DEFAULT_MAX_VERTICES, build_game
from semgame.errors import DeadlineExceeded, SemgameError
from semgame.game import PLAYER_NAMES
from semgame.serialization import game_from_dict, game_to_dict
from semgame.solvers import SI, SI_SEM, solve


log = logging.getLogger(__name__)


GRACE = 5.0
DRAW_FACTOR = 20
FIELDS = ('model', 'class', 'algo', 'run', 'seed', 'winner', 'eval_steps', 'solution_size',
          'immediate', 'wall_ms', 'timeout')
NOT_AVAILABLE = 'n/a'


SuiteConfig = namedtuple('SuiteConfig', 'runs timeout seed workers max_vertices wall_time',
                         defaults=(5, 60.0, 0, 1, DEFAULT_MAX_VERTICES, False))

BenchCell = namedtuple('BenchCell', 'index model algorithm run seed')

BenchRecord = namedtuple('BenchRecord', 'model family algorithm run seed winner eval_steps '
                                        'solution_size immediate wall_ms timeout')

SuiteResult = namedtuple('SuiteResult', 'records filtered')

Summary = namedtuple('Summary', 'family algorithm runs mean_steps mean_solution_size immediate timeouts')


def cell_seed(master, index):
    return int(np.random.SeedSequence([master, index]).generate_state(1)[0])


_games = {}


def run_cell(key, game_data, algorithm, seed, timeout):
    """Solves one cell; runs inside a pool worker and returns plain data.

    A worker keeps the game of its last model and drops the formula caches
    whenever it moves on to another one.
    """
    started = time.monotonic()
    game = _games.get(key)
    if game is None:
        _games.clear()
        caches.clear()
        game = _games[key] = game_from_dict(game_data)
    outcome = {'winner': None, 'eval_steps': None, 'solution_size': None, 'immediate': None,
               'timeout': False, 'error': ''}
    try:
        result = solve(game, algorithm, seed, deadline=started + timeout)
    except DeadlineExceeded as error:
        outcome.update(timeout=True, eval_steps=error.steps)
    except SemgameError as error:
        outcome.update(error=str(error))
    else:
        outcome.update(eval_steps=result.eval_steps, immediate=result.immediate)
        if result.winner is not None:
            outcome.update(winner=PLAYER_NAMES[result.winner],
                           solution_size=float(analysis.solution_size(game, result.strategy)))
    outcome['wall_ms'] = (time.monotonic() - started) * 1000.0
    return outcome


class SuiteRunner(object):
    def __init__(self, config=SuiteConfig(), io_loop=None):
        self.config = config
        self.io_loop = io_loop or IOLoop.current()
        if config.workers <= 1:
            self.executor = ThreadPoolExecutor(1)
        else:
            self.executor = ProcessPoolExecutor(config.workers)
        self.slots = Semaphore(max(1, config.workers))

    def prepare(self, models):
        """Builds every model's game; models that cannot be built are filtered."""
        games = {}
        filtered = []
        for model in models:
            try:
                game = build_game(model.formula, model.inputs, model.outputs,
                                  max_vertices=self.config.max_vertices)
            except SemgameError as error:
                log.warning('filtered %s: %s', model.id, error)
                filtered.append((model.id, str(error)))
                continue
            games[model.id] = game_to_dict(game)
        return games, filtered

    def cells(self, models, algorithms, games):
        index = 0
        for model in models:
            if model.id not in games:
                continue
            for algorithm in algorithms:
                for run in range(self.config.runs):
                    yield BenchCell(index, model, algorithm, run, cell_seed(self.config.seed, index))
                    index += 1

    @gen.coroutine
    def run_cell(self, cell, game_data):
        with (yield self.slots.acquire()):
            future = self.io_loop.run_in_executor(
                self.executor, run_cell, (cell.model.id, cell.model.formula), game_data,
                cell.algorithm, cell.seed, self.config.timeout)
            try:
                outcome = yield gen.with_timeout(timedelta(seconds=self.config.timeout + GRACE), future)
            except gen.TimeoutError:
                log.warning('%s/%s run %d passed the wall clock limit', cell.model.id, cell.algorithm, cell.run)
                outcome = {'winner': None, 'eval_steps': None, 'solution_size': None, 'immediate': None,
                           'timeout': True, 'error': '', 'wall_ms': None}
        record = BenchRecord(cell.model.id, cell.model.family, cell.algorithm, cell.run, cell.seed,
                             outcome['winner'], outcome['eval_steps'], outcome['solution_size'],
                             outcome['immediate'], outcome['wall_ms'], outcome['timeout'])
        if outcome['error']:
            log.warning('%s/%s run %d failed: %s', cell.model.id, cell.algorithm, cell.run, outcome['error'])
        log.info('%s/%s run %d: %s in %s steps', record.model, record.algorithm, record.run,
                 'timeout' if record.timeout else record.winner or 'no winner', record.eval_steps)
        return record

    @gen.coroutine
    def run(self, models, algorithms):
        games, filtered = self.prepare(models)
        cells = list(self.cells(models, algorithms, games))
        log.info('running %d cells over %d models (%d filtered)', len(cells), len(games), len(filtered))
        records = yield [self.run_cell(cell, games[cell.model.id]) for cell in cells]
        return SuiteResult(list(records), filtered)

    def close(self):
        self.executor.shutdown(wait=True)


def run_suite(models, algorithms, config=SuiteConfig()):
    io_loop = IOLoop()
    runner = SuiteRunner(config, io_loop)
    try:
        return io_loop.run_sync(lambda: runner.run(models, algorithms))
    finally:
        runner.close()
        io_loop.close()


def collect_models(spec, count, seed=0, max_vertices=DEFAULT_MAX_VERTICES, max_draws=None):
    """The first `count` models of the class stream whose games build.

    Returns the models and the (id, reason) pairs of the draws that were
    skipped; fewer than `count` models come back only when `max_draws`
    (DRAW_FACTOR times `count` by default) runs out.
    """
    if max_draws is None:
        max_draws = DRAW_FACTOR * count
    models = []
    filtered = []
    for model in itertools.islice(generator.model_stream(spec, seed), max_draws):
        if len(models) == count:
            break
        try:
            build_game(model.formula, model.inputs, model.outputs, max_vertices=max_vertices)
        except SemgameError as error:
            log.debug('skipped %s: %s', model.id, error)
            filtered.append((model.id, str(error)))
            continue
        models.append(model)
    if len(models) < count:
        log.warning('only %d of %d %s models build within %d draws', len(models), count, spec.name, max_draws)
    return models, filtered


def _flag(value):
    if value is None:
        return ''
    return '1' if value else '0'


def _row(record, wall_time):
    return [
        record.model, record.family, record.algorithm, record.run, record.seed,
        record.winner or '',
        '' if record.eval_steps is None else record.eval_steps,
        '' if record.solution_size is None else '{:.6f}'.format(record.solution_size),
        _flag(record.immediate),
        '{:.1f}'.format(record.wall_ms) if wall_time and record.wall_ms is not None else '',
        _flag(record.timeout),
    ]


def write_csv(records, path, wall_time=False):
    with open(path, 'w', newline='', encoding='utf-8') as target:
        writer = csv.writer(target)
        writer.writerow(FIELDS)
        for record in records:
            writer.writerow(_row(record, wall_time))


def _optional(text, kind):
    return kind(text) if text != '' else None


def _optional_flag(text):
    return None if text == '' else text == '1'


def read_csv(path):
    with open(path, newline='', encoding='utf-8') as source:
        return [BenchRecord(row['model'], row['class'], row['algo'], int(row['run']), int(row['seed']),
                            row['winner'] or None, _optional(row['eval_steps'], int),
                            _optional(row['solution_size'], float), _optional_flag(row['immediate']),
                            _optional(row['wall_ms'], float), row['timeout'] == '1')
                for row in csv.DictReader(source)]


def geometric_mean(values):
    return float(np.exp(np.mean(np.log(np.asarray(values, dtype=float)))))


def aggregate(records):
    """One Summary per (class, algorithm), in order of first appearance."""
    cells = {}
    for record in records:
        cells.setdefault((record.family, record.algorithm), []).append(record)
    summaries = []
    for (family, algorithm), members in cells.items():
        finished = [record for record in members if not record.timeout and record.eval_steps is not None]
        steps = [max(record.eval_steps, 1) for record in finished]
        sizes = [record.solution_size for record in finished if record.solution_size is not None]
        immediate = None
        if algorithm in (SI, SI_SEM) and finished:
            immediate = 100.0 * sum(1 for record in finished if record.immediate) / len(finished)
        summaries.append(Summary(
            family, algorithm, len(members),
            geometric_mean(steps) if steps else None,
            float(np.mean(sizes)) if sizes else None,
            immediate,
            100.0 * sum(1 for record in members if record.timeout) / len(members),
        ))
    return summaries


def _cell(value, pattern='{:.1f}'):
    return NOT_AVAILABLE if value is None else pattern.format(value)


def _table(summaries, field, pattern, algorithms=None):
    families = []
    columns = []
    for summary in summaries:
        if summary.family not in families:
            families.append(summary.family)
        if summary.algorithm not in columns and (algorithms is None or summary.algorithm in algorithms):
            columns.append(summary.algorithm)
    lookup = {(summary.family, summary.algorithm): getattr(summary, field) for summary in summaries}
    rows = [[family] + [_cell(lookup.get((family, algorithm)), pattern) for algorithm in columns]
            for family in families]
    return tabulate(rows, headers=['class'] + columns)


def format_report(records):
    summaries = aggregate(records)
    sections = [
        ('Immediately solved games (%)', _table(summaries, 'immediate', '{:.1f}', (SI, SI_SEM))),
        ('Geometric mean of evaluation steps', _table(summaries, 'mean_steps', '{:.0f}')),
        ('Mean solution size', _table(summaries, 'mean_solution_size', '{:.3f}')),
        ('Timeouts (%)', _table(summaries, 'timeouts', '{:.1f}')),
    ]
    return '\n\n'.join('{}\n{}'.format(title, table) for title, table in sections) + '\n'


def step_distributions(records):
    """Per (class, algorithm): sorted steps of solved runs and the fraction
    of all runs solved within each of them."""
    cells = {}
    for record in records:
        cells.setdefault((record.family, record.algorithm), []).append(record)
    distributions = {}
    for key, members in cells.items():
        solved = sorted(record.eval_steps for record in members if record.winner and not record.timeout)
        distributions[key] = [(steps, (position + 1) / len(members)) for position, steps in enumerate(solved)]
    return distributions


def write_distributions(records, directory):
    if not os.path.isdir(directory):
        os.makedirs(directory)
    paths = []
    for (family, algorithm), points in sorted(step_distributions(records).items()):
        path = os.path.join(directory, '{}_{}.dat'.format(family, algorithm))
        with open(path, 'w', encoding='utf-8') as target:
            target.write('# steps solved_fraction\n')
            for steps, fraction in points:
                target.write('{} {:.6f}\n'.format(steps, fraction))
        paths.append(path)
    return paths
