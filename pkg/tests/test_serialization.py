import json
import os
import shutil
import tempfile
from unittest import TestCase

from nose.tools import istest

from semgame.construction import build_game
from semgame.errors import SchemaError
from semgame.parser import parse
from semgame.serialization import game_from_dict, game_to_dict, load, store
from .utils import EXAMPLE_GAME, example_game


def minimal_data():
    return {
        'aps': {'inputs': ['a'], 'outputs': ['b']},
        'start': 0,
        'vertices': [
            {'id': 0, 'owner': 1, 'master': 'G (a | b)', 'monitors': []},
            {'id': 1, 'owner': 0, 'master': 'G (a | b)', 'monitors': []},
        ],
        'edges': [
            {'src': 0, 'dst': 1, 'prio': 1, 'move': {'a': False}},
            {'src': 1, 'dst': 0, 'prio': 1, 'move': {'b': True}},
        ],
    }


class SerializationTest(TestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    @istest
    def loads_legacy_vertex_priorities_onto_edges(self):
        game = load(EXAMPLE_GAME)

        self.assertEqual([edge.priority for edge in game.edges], [4, 4, 4, 2, 2, 1, 1, 3, 3, 5])
        self.assertEqual(game.start, 0)
        self.assertEqual(len(game), 5)

    @istest
    def stores_and_loads_the_example_game(self):
        path = os.path.join(self.directory, 'game.json')
        game = example_game()

        store(game, path)
        reloaded = load(path)

        self.assertEqual(game_to_dict(reloaded), game_to_dict(game))
        self.assertEqual(reloaded.edges, game.edges)

    @istest
    def writes_sorted_and_indented_json(self):
        path = os.path.join(self.directory, 'game.json')

        store(game_from_dict(minimal_data()), path)

        with open(path) as source:
            text = source.read()
        self.assertTrue(text.startswith('{\n  "aps"'))
        self.assertEqual(json.loads(text)['edges'][0], {'src': 0, 'dst': 1, 'prio': 1, 'move': {'a': False}})

    @istest
    def reads_labellings_as_formulae(self):
        game = game_from_dict(minimal_data())

        self.assertIs(game.master(0), parse('G (a | b)'))
        self.assertEqual(game.labelling(1).monitors, ())
        self.assertEqual(game.edges[1].move, (('b', True),))
        self.assertEqual(game.inputs, ('a',))

    @istest
    def keeps_monitor_obligations_of_built_games(self):
        game = build_game('G F (a & X b)', (), ('a', 'b'))

        reloaded = game_from_dict(json.loads(json.dumps(game_to_dict(game))))

        self.assertEqual([vertex.labelling for vertex in reloaded.vertices],
                         [vertex.labelling for vertex in game.vertices])
        self.assertEqual(reloaded.edges, game.edges)

    @istest
    def points_at_missing_start(self):
        data = minimal_data()
        del data['start']

        with self.assertRaises(SchemaError) as context:
            game_from_dict(data)

        self.assertEqual(context.exception.pointer, '')
        self.assertIn('missing "start"', str(context.exception))

    @istest
    def points_at_malformed_edges(self):
        data = minimal_data()
        data['edges'][1]['dst'] = 7

        with self.assertRaises(SchemaError) as context:
            game_from_dict(data)

        self.assertEqual(context.exception.pointer, '/edges/1/dst')

    @istest
    def points_at_malformed_formulae(self):
        data = minimal_data()
        data['vertices'][1]['master'] = 'G (a |'

        with self.assertRaises(SchemaError) as context:
            game_from_dict(data)

        self.assertEqual(context.exception.pointer, '/vertices/1/master')

    @istest
    def rejects_sparse_vertex_ids(self):
        data = minimal_data()
        data['vertices'][1]['id'] = 3

        with self.assertRaises(SchemaError) as context:
            game_from_dict(data)

        self.assertEqual(context.exception.pointer, '/vertices/1/id')

    @istest
    def rejects_boolean_priorities(self):
        data = minimal_data()
        data['edges'][0]['prio'] = True

        with self.assertRaises(SchemaError) as context:
            game_from_dict(data)

        self.assertEqual(context.exception.pointer, '/edges/0/prio')

    @istest
    def rejects_invalid_json(self):
        path = os.path.join(self.directory, 'broken.json')
        with open(path, 'w') as target:
            target.write('{"aps": ')

        with self.assertRaises(SchemaError):
            load(path)

    @istest
    def rejects_dead_ends(self):
        data = minimal_data()
        data['edges'].pop()

        with self.assertRaises(SchemaError) as context:
            game_from_dict(data)

        self.assertIn('vertex 1 has no outgoing edge', str(context.exception))

    @istest
    def rejects_sinks_that_leave(self):
        data = minimal_data()
        data['vertices'][1]['master'] = 'tt'

        with self.assertRaises(SchemaError) as context:
            game_from_dict(data)

        self.assertIn('sink 1 leaves through edge 1', str(context.exception))

    @istest
    def accepts_games_that_do_not_alternate(self):
        data = minimal_data()
        data['edges'].append({'src': 0, 'dst': 0, 'prio': 2})

        game = game_from_dict(data)

        self.assertEqual(len(game.edges), 3)

    @istest
    def accepts_unlabelled_vertices(self):
        data = minimal_data()
        for vertex in data['vertices']:
            del vertex['master']
            del vertex['monitors']

        game = game_from_dict(data)

        self.assertFalse(game.is_labelled)
        self.assertIsNone(game.master(0))
