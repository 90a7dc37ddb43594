"""Plays, winning checks and metrics on fixed strategies."""
from fractions import Fraction

import networkx as nx

from semgame.game import opponent, priority_winner


def step_priority(game, source, target):
    """Priority of the move from `source` to `target`.

    Among parallel edges the owner of `source` takes the highest priority of
    its own parity, or the lowest one if none has its parity.
    """
    priorities = [game.edges[index].priority for index in game.outgoing[source]
                  if game.edges[index].target == target]
    if not priorities:
        raise KeyError((source, target))
    owner = game.owner(source)
    own = [priority for priority in priorities if priority_winner(priority) == owner]
    return max(own) if own else min(priorities)


def cycle_priorities(game, lasso):
    cycle = list(lasso.cycle)
    closing = cycle[1:] + cycle[:1]
    return [step_priority(game, source, target) for source, target in zip(cycle, closing)]


def lasso_winner(game, lasso):
    """The player winning the play that repeats `lasso.cycle` forever."""
    if not lasso.cycle:
        raise ValueError('lasso cycle must not be empty')
    return priority_winner(max(cycle_priorities(game, lasso)))


def restricted_edges(game, strategy):
    """Edge indices left once `strategy.player` commits to its choices."""
    for vertex in range(len(game)):
        if game.owner(vertex) == strategy.player:
            yield strategy[vertex]
        else:
            for index in game.outgoing[vertex]:
                yield index


def restricted_graph(game, strategy):
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(len(game)))
    for index in restricted_edges(game, strategy):
        edge = game.edges[index]
        graph.add_edge(edge.source, edge.target, key=index, priority=edge.priority)
    return graph


def reachable(game, strategy):
    graph = restricted_graph(game, strategy)
    return nx.descendants(graph, game.start) | {game.start}


def check_winning(game, strategy):
    """Whether `strategy` wins from the start against every opponent strategy.

    The opponent wins iff some reachable cycle of the restricted graph has a
    maximal priority of its parity: for every such priority p, look for an
    edge of priority p inside a strongly connected component of the edges
    with priority at most p.
    """
    graph = restricted_graph(game, strategy)
    graph = graph.subgraph(nx.descendants(graph, game.start) | {game.start})
    rival = opponent(strategy.player)
    priorities = sorted({data['priority'] for _, _, data in graph.edges(data=True)})
    for threshold in priorities:
        if priority_winner(threshold) != rival:
            continue
        bounded = nx.DiGraph()
        bounded.add_nodes_from(graph.nodes)
        bounded.add_edges_from((source, target) for source, target, data in graph.edges(data=True)
                               if data['priority'] <= threshold)
        component = {}
        for number, members in enumerate(nx.strongly_connected_components(bounded)):
            for vertex in members:
                component[vertex] = number
        for source, target, data in graph.edges(data=True):
            if data['priority'] == threshold and component[source] == component[target]:
                return False
    return True


def solution_size(game, strategy):
    return Fraction(len(reachable(game, strategy)), len(game))
