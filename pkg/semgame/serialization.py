"""JSON game format.

    {"aps": {"inputs": [...], "outputs": [...]},
     "start": 0,
     "vertices": [{"id": 0, "owner": 0, "master": "G a", "monitors": [["a"]]}],
     "edges": [{"src": 0, "dst": 1, "prio": 0, "move": {"a": true}}]}

Vertex labels are optional. Older files put "prio" on vertices instead of
edges; such a priority is copied onto every outgoing edge of the vertex.
"""
import json
import logging

from semgame.errors import FormulaSyntaxError, SchemaError
from semgame.game import Edge, Labelling, LabelledParityGame, Vertex, SYSTEM, ENVIRONMENT
from semgame.parser import parse


log = logging.getLogger(__name__)


def _require(mapping, key, pointer, kind):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaError(pointer, 'missing "{}"'.format(key))
    value = mapping[key]
    if kind is int and isinstance(value, bool):
        raise SchemaError('{}/{}'.format(pointer, key), 'expected int')
    if not isinstance(value, kind):
        raise SchemaError('{}/{}'.format(pointer, key), 'expected {}'.format(kind.__name__))
    return value


def _formula(text, pointer):
    if not isinstance(text, str):
        raise SchemaError(pointer, 'expected formula text')
    try:
        return parse(text)
    except FormulaSyntaxError as error:
        raise SchemaError(pointer, str(error))


def _labelling(data, pointer):
    if 'master' not in data:
        if 'monitors' in data:
            raise SchemaError(pointer, 'monitors without master')
        return None
    master = _formula(data['master'], pointer + '/master')
    monitors = []
    for position, obligations in enumerate(data.get('monitors', [])):
        monitor_pointer = '{}/monitors/{}'.format(pointer, position)
        if not isinstance(obligations, list):
            raise SchemaError(monitor_pointer, 'expected list')
        monitors.append(tuple(_formula(text, '{}/{}'.format(monitor_pointer, index))
                              for index, text in enumerate(obligations)))
    return Labelling(master, tuple(monitors))


def game_from_dict(data):
    if not isinstance(data, dict):
        raise SchemaError('', 'expected object')
    aps = _require(data, 'aps', '', dict)
    inputs = _require(aps, 'inputs', '/aps', list)
    outputs = _require(aps, 'outputs', '/aps', list)
    start = _require(data, 'start', '', int)
    raw_vertices = _require(data, 'vertices', '', list)
    raw_edges = _require(data, 'edges', '', list)

    vertices = []
    legacy_priorities = {}
    for position, raw in enumerate(raw_vertices):
        pointer = '/vertices/{}'.format(position)
        vertex_id = _require(raw, 'id', pointer, int)
        if vertex_id != position:
            raise SchemaError(pointer + '/id', 'ids must be dense from 0 and in order')
        owner = _require(raw, 'owner', pointer, int)
        if owner not in (SYSTEM, ENVIRONMENT):
            raise SchemaError(pointer + '/owner', 'owner must be 0 or 1')
        if 'prio' in raw:
            legacy_priorities[vertex_id] = _require(raw, 'prio', pointer, int)
        vertices.append(Vertex(vertex_id, owner, _labelling(raw, pointer)))

    edges = []
    for position, raw in enumerate(raw_edges):
        pointer = '/edges/{}'.format(position)
        source = _require(raw, 'src', pointer, int)
        target = _require(raw, 'dst', pointer, int)
        for key, vertex in (('src', source), ('dst', target)):
            if not 0 <= vertex < len(vertices):
                raise SchemaError('{}/{}'.format(pointer, key), 'unknown vertex {}'.format(vertex))
        if 'prio' in raw:
            priority = _require(raw, 'prio', pointer, int)
        elif source in legacy_priorities:
            priority = legacy_priorities[source]
        else:
            raise SchemaError(pointer, 'missing "prio"')
        if priority < 0:
            raise SchemaError(pointer + '/prio', 'priority must be non-negative')
        move = raw.get('move', {})
        if not isinstance(move, dict):
            raise SchemaError(pointer + '/move', 'expected object')
        edges.append(Edge(source, target, priority, tuple(sorted(move.items()))))

    if not 0 <= start < len(vertices):
        raise SchemaError('/start', 'unknown vertex {}'.format(start))
    if legacy_priorities:
        log.debug('converted %d vertex priorities onto edges', len(legacy_priorities))
    game = LabelledParityGame(vertices, edges, start, inputs, outputs)
    violations = game.validate(alternation=False)
    if violations:
        raise SchemaError('', 'invalid game: {}'.format('; '.join(violations)))
    return game


def game_to_dict(game):
    vertices = []
    for vertex in game.vertices:
        entry = {'id': vertex.id, 'owner': vertex.owner}
        if vertex.labelling is not None:
            entry['master'] = vertex.labelling.master.text
            entry['monitors'] = [[formula.text for formula in monitor]
                                 for monitor in vertex.labelling.monitors]
        vertices.append(entry)
    edges = [{'src': edge.source, 'dst': edge.target, 'prio': edge.priority, 'move': dict(edge.move)}
             for edge in game.edges]
    return {
        'aps': {'inputs': list(game.inputs), 'outputs': list(game.outputs)},
        'start': game.start,
        'vertices': vertices,
        'edges': edges,
    }


def load(path):
    with open(path, encoding='utf-8') as source:
        try:
            data = json.load(source)
        except ValueError as error:
            raise SchemaError('', 'invalid JSON: {}'.format(error))
    return game_from_dict(data)


def store(game, path):
    with open(path, 'w', encoding='utf-8') as target:
        json.dump(game_to_dict(game), target, indent=2, sort_keys=True)
        target.write('\n')
