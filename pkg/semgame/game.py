from collections import namedtuple

from semgame import ltl


SYSTEM = 0
ENVIRONMENT = 1
PLAYER_NAMES = {
    SYSTEM: 'system',
    ENVIRONMENT: 'environment',
}


Vertex = namedtuple('Vertex', 'id owner labelling')
Edge = namedtuple('Edge', 'source target priority move')
Labelling = namedtuple('Labelling', 'master monitors')
Lasso = namedtuple('Lasso', 'stem cycle')


def opponent(player):
    return 1 - player


def winning_parity(player):
    return 1 if player == SYSTEM else 0


def priority_winner(priority):
    return SYSTEM if priority % 2 == 1 else ENVIRONMENT


class LabelledParityGame(object):
    """Alternating parity game with priorities on edges.

    Vertex ids are dense from 0; edges are identified by their position in
    `edges`. Instances are not modified after construction.
    """

    def __init__(self, vertices, edges, start, inputs=(), outputs=()):
        self.vertices = list(vertices)
        self.edges = list(edges)
        self.start = start
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.outgoing = [[] for _ in self.vertices]
        for index, edge in enumerate(self.edges):
            if 0 <= edge.source < len(self.outgoing):
                self.outgoing[edge.source].append(index)

    def __len__(self):
        return len(self.vertices)

    @property
    def max_priority(self):
        return max(edge.priority for edge in self.edges)

    @property
    def is_labelled(self):
        return all(vertex.labelling is not None for vertex in self.vertices)

    def owner(self, vertex):
        return self.vertices[vertex].owner

    def labelling(self, vertex):
        return self.vertices[vertex].labelling

    def master(self, vertex):
        labelling = self.vertices[vertex].labelling
        return labelling.master if labelling is not None else None

    def target(self, edge_index):
        return self.edges[edge_index].target

    def edge_between(self, source, target):
        for index in self.outgoing[source]:
            if self.edges[index].target == target:
                return index
        raise KeyError((source, target))

    def vertices_of(self, player):
        return [vertex.id for vertex in self.vertices if vertex.owner == player]

    def sink_value(self, vertex):
        """True/False for tt/ff sinks, None otherwise."""
        master = self.master(vertex)
        if master is ltl.TRUE:
            return True
        if master is ltl.FALSE:
            return False
        return None

    def validate(self, alternation=True):
        violations = []
        count = len(self.vertices)
        for position, vertex in enumerate(self.vertices):
            if vertex.id != position:
                violations.append('vertex at position {} has id {}'.format(position, vertex.id))
            if vertex.owner not in (SYSTEM, ENVIRONMENT):
                violations.append('vertex {} has owner {}'.format(position, vertex.owner))
        if not 0 <= self.start < count:
            violations.append('start vertex {} does not exist'.format(self.start))
        for index, edge in enumerate(self.edges):
            if not (0 <= edge.source < count and 0 <= edge.target < count):
                violations.append('edge {} connects unknown vertices'.format(index))
                continue
            if edge.priority < 0:
                violations.append('edge {} has negative priority'.format(index))
            if alternation and self.owner(edge.source) == self.owner(edge.target):
                is_sink_loop = edge.source == edge.target and self.sink_value(edge.source) is not None
                if not is_sink_loop:
                    violations.append('edge {} does not alternate between players'.format(index))
        for vertex in range(count):
            if not self.outgoing[vertex]:
                violations.append('vertex {} has no outgoing edge'.format(vertex))
            value = self.sink_value(vertex)
            if value is not None:
                parity = 1 if value else 0
                for index in self.outgoing[vertex]:
                    edge = self.edges[index]
                    if edge.target != vertex or edge.priority % 2 != parity:
                        violations.append('sink {} leaves through edge {}'.format(vertex, index))
        return violations


class Strategy(object):
    """Positional strategy: one outgoing edge index per vertex of `player`."""

    def __init__(self, player, choices):
        self.player = player
        self.choices = dict(choices)

    def __getitem__(self, vertex):
        return self.choices[vertex]

    def __eq__(self, other):
        return isinstance(other, Strategy) and (self.player, self.choices) == (other.player, other.choices)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'Strategy({}, {!r})'.format(PLAYER_NAMES[self.player], self.choices)

    def is_total(self, game):
        return all(vertex in self.choices and self.choices[vertex] in game.outgoing[vertex]
                   for vertex in game.vertices_of(self.player))

    @classmethod
    def from_targets(cls, game, player, targets):
        """Builds a strategy from a vertex -> successor vertex mapping."""
        return cls(player, {vertex: game.edge_between(vertex, target) for vertex, target in targets.items()})


class VertexPriorityGame(object):
    """The same game with priorities on vertices.

    A vertex whose incoming edges all carry one priority takes it over;
    every other edge becomes an extra single-successor vertex carrying the
    edge's priority. Original vertices keep their ids.
    """

    def __init__(self, game):
        incoming = [set() for _ in game.vertices]
        for edge in game.edges:
            incoming[edge.target].add(edge.priority)
        self.size = len(game)
        self.owner = [vertex.owner for vertex in game.vertices]
        self.priority = [min(priorities) if len(priorities) == 1 else 0 for priorities in incoming]
        self.successors = [[] for _ in game.vertices]
        self.edge_of = {}
        self.successor_of_edge = []
        for index, edge in enumerate(game.edges):
            if len(incoming[edge.target]) == 1:
                successor = edge.target
            else:
                successor = len(self.owner)
                self.owner.append(game.owner(edge.source))
                self.priority.append(edge.priority)
                self.successors.append([edge.target])
            self.successor_of_edge.append(successor)
            if (edge.source, successor) not in self.edge_of:
                self.edge_of[edge.source, successor] = index
                self.successors[edge.source].append(successor)

    def __len__(self):
        return len(self.owner)

    def strategy(self, player, choices):
        """Translates successor choices on original vertices into a Strategy."""
        return Strategy(player, {
            vertex: self.edge_of[vertex, successor]
            for vertex, successor in choices.items()
            if vertex < self.size and self.owner[vertex] == player
        })

    def choices(self, strategy):
        return {vertex: self.successor_of_edge[index] for vertex, index in strategy.choices.items()}
