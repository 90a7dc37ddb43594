"""Recursive parity game solver, used as a reference for the other solvers."""
from collections import deque, namedtuple
import logging

from semgame.game import SYSTEM, ENVIRONMENT, VertexPriorityGame, opponent, priority_winner


log = logging.getLogger(__name__)


Solution = namedtuple('Solution', 'regions strategies')


def attractor(view, predecessors, arena, player, targets):
    """Vertices of `arena` from which `player` forces a visit to `targets`.

    Returns the attractor and the attracting successor chosen for each of
    `player`'s vertices added to it.
    """
    region = set(targets)
    choices = {}
    remaining = {vertex: sum(1 for successor in view.successors[vertex] if successor in arena)
                 for vertex in arena}
    pending = deque(region)
    while pending:
        vertex = pending.popleft()
        for predecessor in predecessors[vertex]:
            if predecessor not in arena or predecessor in region:
                continue
            if view.owner[predecessor] == player:
                choices[predecessor] = vertex
            else:
                remaining[predecessor] -= 1
                if remaining[predecessor]:
                    continue
            region.add(predecessor)
            pending.append(predecessor)
    return region, choices


def _solve(view, predecessors, arena):
    regions = {SYSTEM: set(), ENVIRONMENT: set()}
    choices = {SYSTEM: {}, ENVIRONMENT: {}}
    if not arena:
        return regions, choices
    top = max(view.priority[vertex] for vertex in arena)
    player = priority_winner(top)
    rival = opponent(player)
    tops = {vertex for vertex in arena if view.priority[vertex] == top}
    attracted, attracting = attractor(view, predecessors, arena, player, tops)
    sub_regions, sub_choices = _solve(view, predecessors, arena - attracted)
    if not sub_regions[rival]:
        regions[player] = set(arena)
        choices[player].update(sub_choices[player])
        choices[player].update(attracting)
        for vertex in tops:
            if view.owner[vertex] == player:
                choices[player][vertex] = next(successor for successor in view.successors[vertex]
                                               if successor in arena)
        return regions, choices
    lost, trapping = attractor(view, predecessors, arena, rival, sub_regions[rival])
    rest_regions, rest_choices = _solve(view, predecessors, arena - lost)
    regions[player] = rest_regions[player]
    regions[rival] = rest_regions[rival] | lost
    choices[player].update(rest_choices[player])
    choices[rival].update(rest_choices[rival])
    choices[rival].update(sub_choices[rival])
    choices[rival].update(trapping)
    return regions, choices


def zielonka(game):
    """Winning regions of both players and total strategies that win from
    every vertex of the own region."""
    view = VertexPriorityGame(game)
    predecessors = [[] for _ in range(len(view))]
    for vertex, successors in enumerate(view.successors):
        for successor in successors:
            predecessors[successor].append(vertex)
    regions, choices = _solve(view, predecessors, set(range(len(view))))
    original = range(view.size)
    solution = Solution(
        {player: {vertex for vertex in region if vertex < view.size} for player, region in regions.items()},
        {player: view.strategy(player, {vertex: choices[player].get(vertex, view.successors[vertex][0])
                                        for vertex in original if view.owner[vertex] == player})
         for player in (SYSTEM, ENVIRONMENT)},
    )
    log.debug('solved %d vertices: system wins %d', view.size, len(solution.regions[SYSTEM]))
    return solution


def winner(game):
    solution = zielonka(game)
    return SYSTEM if game.start in solution.regions[SYSTEM] else ENVIRONMENT
