"""Labelled parity games from LTL formulae.

A full letter is played in two half-moves: the first mover fixes its
propositions, then the second mover fixes the rest and the labelling
advances. The master formula follows `after`; goals of the form G F x,
F G x and G x (x co-safety) are kept out of the master and tracked by
monitors ordered in an appearance record. A conjunction of goals shares one
monitor that succeeds once every member has succeeded.
"""
from collections import deque, namedtuple
import itertools
import logging

from semgame import ltl
from semgame.abstraction import equivalence_key, simplify
from semgame.errors import BudgetExceeded, UnsupportedFormula
from semgame.game import ENVIRONMENT, SYSTEM, Edge, Labelling, LabelledParityGame, Vertex
from semgame.parser import parse
from semgame.unfolding import after


log = logging.getLogger(__name__)

SAFETY = 'safety'
COSAFETY = 'cosafety'
GENERAL = 'general'

RECURRENCE = 'recurrence'
PERSISTENCE = 'persistence'
INVARIANCE = 'invariance'
CONJUNCTION = 'conjunction'

SUCCESS = 'success'
FAIL = 'fail'
NEUTRAL = 'neutral'

ENV_FIRST = 'env'
SYS_FIRST = 'sys'
DEFAULT_MAX_VERTICES = 10000

VIOLATED = (ltl.FALSE, ltl.FALSE)


class MonitorState(namedtuple('MonitorState', 'goal kind obligations event members waiting',
                              defaults=((), frozenset()))):
    """Progress of one monitor.

    `members` and `waiting` are only used by conjunctions: the member states
    and the members that have not succeeded since the last success of the
    whole conjunction.
    """
    __slots__ = ()


def is_safety(phi):
    return not ltl.kinds(phi) & {ltl.FINALLY, ltl.UNTIL}


def is_cosafety(phi):
    return not ltl.kinds(phi) & {ltl.GLOBALLY, ltl.RELEASE}


def classify(phi):
    phi = ltl.nnf(phi)
    if is_safety(phi):
        return SAFETY
    if is_cosafety(phi):
        return COSAFETY
    return GENERAL


def goal_kind(phi):
    """RECURRENCE for G F x, PERSISTENCE for F G x, INVARIANCE for G x, with x co-safety; else None."""
    child = phi.children[0] if phi.children else None
    if phi.kind == ltl.GLOBALLY and child.kind == ltl.FINALLY and is_cosafety(child.children[0]):
        return RECURRENCE
    if phi.kind == ltl.FINALLY and child.kind == ltl.GLOBALLY and is_cosafety(child.children[0]):
        return PERSISTENCE
    if phi.kind == ltl.GLOBALLY and is_cosafety(child):
        return INVARIANCE
    return None


def goal_body(goal):
    if goal_kind(goal) == INVARIANCE:
        return goal.children[0]
    return goal.children[0].children[0]


def goal_expression(parts):
    """Disjunctive normal form over goals of the conjunction of `parts`.

    Returns a tuple of groups, each a tuple of goals that must hold together,
    or None when some part is not a boolean combination of goals.
    """
    groups = [()]
    for part in parts:
        if goal_kind(part) is not None:
            options = [(part,)]
        elif part.kind == ltl.AND:
            options = goal_expression(part.children)
        elif part.kind == ltl.OR:
            options = []
            for child in part.children:
                expanded = goal_expression([child])
                if expanded is None:
                    return None
                options.extend(expanded)
        else:
            return None
        if options is None:
            return None
        groups = [group + tuple(goal for goal in option if goal not in group)
                  for group in groups for option in options]
    return tuple(dict.fromkeys(groups))


def split_fragment(phi):
    """Kind of game phi (in NNF) builds and the goal groups its monitors track.

    Safety conjuncts and co-safety disjuncts stay in the master alone; what
    is left must be a boolean combination of goals.
    """
    if is_safety(phi):
        return SAFETY, ()
    if is_cosafety(phi):
        return COSAFETY, ()
    if phi.kind == ltl.AND:
        rest = [child for child in phi.children if not is_safety(child)]
    elif phi.kind == ltl.OR:
        rest = [ltl.disjunction(*[child for child in phi.children if not is_cosafety(child)])]
    else:
        rest = [phi]
    groups = goal_expression(rest)
    if not groups:
        raise UnsupportedFormula(
            '{} is neither safety, co-safety nor a combination with G F / F G / G goals'.format(phi.text))
    return GENERAL, groups


def group_goals(groups):
    return tuple(dict.fromkeys(goal for group in groups for goal in group))


def initial_monitor(goal):
    kind = goal_kind(goal)
    if kind is None:
        raise UnsupportedFormula('{} is not a monitored goal'.format(goal.text))
    if kind == RECURRENCE:
        obligations = (goal_body(goal),)
    else:
        obligations = (ltl.TRUE, ltl.TRUE)
    return MonitorState(goal, kind, obligations, NEUTRAL)


def initial_group(goals):
    """One monitor for the conjunction of `goals`."""
    if len(goals) == 1:
        return initial_monitor(goals[0])
    members = tuple(initial_monitor(goal) for goal in goals)
    return MonitorState(ltl.conjunction(*goals), CONJUNCTION, _concatenated(members), NEUTRAL,
                        members, frozenset(range(len(members))))


def _concatenated(members):
    return tuple(obligation for member in members for obligation in member.obligations)


def _recurrence_step(state, letter):
    body = goal_body(state.goal)
    (pending,) = state.obligations
    residual = after(ltl.disjunction(pending, body), letter)
    if residual is ltl.TRUE:
        return state._replace(obligations=(body,), event=SUCCESS)
    if residual is ltl.FALSE:
        return state._replace(obligations=(body,), event=NEUTRAL)
    return state._replace(obligations=(residual,), event=NEUTRAL)


def _rounds(state, letter):
    """Current and following round of body instances, None once one is violated."""
    current, following = state.obligations
    current = after(current, letter)
    following = after(ltl.conjunction(following, goal_body(state.goal)), letter)
    if current is ltl.FALSE or following is ltl.FALSE:
        return None
    return current, following


def _persistence_step(state, letter):
    rounds = _rounds(state, letter)
    if rounds is None:
        return state._replace(obligations=(ltl.TRUE, ltl.TRUE), event=FAIL)
    current, following = rounds
    if current is ltl.TRUE:
        return state._replace(obligations=(following, ltl.TRUE), event=SUCCESS)
    return state._replace(obligations=rounds, event=NEUTRAL)


def _invariance_step(state, letter):
    if state.obligations == VIOLATED:
        return state._replace(event=FAIL)
    rounds = _rounds(state, letter)
    if rounds is None:
        return state._replace(obligations=VIOLATED, event=FAIL)
    current, following = rounds
    if current is ltl.TRUE:
        return state._replace(obligations=(following, ltl.TRUE), event=SUCCESS)
    return state._replace(obligations=rounds, event=NEUTRAL)


def _conjunction_step(state, letter):
    stepped = [monitor_step(member, letter) for member in state.members]
    members = tuple(member._replace(event=NEUTRAL) for member in stepped)
    state = state._replace(members=members, obligations=_concatenated(members))
    everyone = frozenset(range(len(members)))
    if any(member.event == FAIL for member in stepped):
        return state._replace(waiting=everyone, event=FAIL)
    waiting = state.waiting - {index for index, member in enumerate(stepped) if member.event == SUCCESS}
    if not waiting:
        return state._replace(waiting=everyone, event=SUCCESS)
    return state._replace(waiting=waiting, event=NEUTRAL)


_STEPS = {
    RECURRENCE: _recurrence_step,
    PERSISTENCE: _persistence_step,
    INVARIANCE: _invariance_step,
    CONJUNCTION: _conjunction_step,
}


def monitor_step(state, letter):
    """Advances a monitor by one letter and records the event it emits.

    A recurrence monitor keeps the disjunction of pending instances of its
    body and succeeds once one of them is discharged. Persistence and
    invariance monitors keep the instances of the current round and of the
    next one and succeed whenever a round is discharged; a violated instance
    makes them fail, for invariance at every later step too.
    """
    step = _STEPS.get(state.kind)
    if step is None:
        raise UnsupportedFormula('no monitor for {!r} goals'.format(state.kind))
    return step(state, letter)


def violated_goals(state):
    """Goals of `state` that can no longer hold."""
    if state.kind == CONJUNCTION:
        return [goal for member in state.members for goal in violated_goals(member)]
    if state.kind == INVARIANCE and state.obligations == VIOLATED:
        return [state.goal]
    return []


def falsify(phi, goals):
    """phi with every occurrence of `goals` replaced by ff."""
    if phi in goals:
        return ltl.FALSE
    if not phi.children:
        return phi
    return ltl.rebuild(phi, [falsify(child, goals) for child in phi.children])


class AppearanceRecord(tuple):
    """Permutation of monitor indices; position 0 is the front."""

    @classmethod
    def initial(cls, count):
        return cls(range(count))


def transition_priority(record, events, neutral=0):
    """Priority of a step and the record after it.

    `events` is indexed by monitor. The monitor with an event at the highest
    position decides: success at position i gives 2i+1, failure 2i+2.
    Failing monitors move to the front.
    """
    eventful = [position for position, monitor in enumerate(record) if events[monitor] != NEUTRAL]
    if not eventful:
        return neutral, record
    position = eventful[-1]
    if events[record[position]] == SUCCESS:
        priority = 2 * position + 1
    else:
        priority = 2 * position + 2
    failing = [monitor for monitor in record if events[monitor] == FAIL]
    if failing:
        record = AppearanceRecord(failing + [monitor for monitor in record if events[monitor] != FAIL])
    return priority, record


def monitor_position(priority, monitors):
    """Position of the monitor that emitted `priority`, -1 if none did."""
    if priority < 1:
        return -1
    return min((priority - 1) // 2, monitors)


_VertexState = namedtuple('_VertexState', 'master monitors record pending')


def _monitor_key(monitor):
    return tuple(equivalence_key(obligation) for obligation in monitor.obligations), monitor.waiting


def _assignments(propositions):
    for values in itertools.product((False, True), repeat=len(propositions)):
        yield tuple(zip(propositions, values))


class GameBuilder(object):
    def __init__(self, phi, inputs, outputs, order=ENV_FIRST, max_vertices=DEFAULT_MAX_VERTICES):
        self.inputs = tuple(sorted(inputs))
        self.outputs = tuple(sorted(outputs))
        overlap = set(self.inputs) & set(self.outputs)
        if overlap:
            raise UnsupportedFormula('propositions {} are both inputs and outputs'.format(sorted(overlap)))
        uncovered = ltl.atoms(phi) - set(self.inputs) - set(self.outputs)
        if uncovered:
            raise UnsupportedFormula('atoms {} are neither inputs nor outputs'.format(sorted(uncovered)))
        if order not in (ENV_FIRST, SYS_FIRST):
            raise ValueError('unknown move order {!r}'.format(order))
        self.phi = ltl.nnf(phi)
        self.fragment, self.groups = split_fragment(self.phi)
        self.goals = group_goals(self.groups)
        self.frozen = frozenset(self.goals)
        self.neutral = 1 if self.fragment == SAFETY else 0
        self.max_vertices = max_vertices
        if order == ENV_FIRST:
            self.full_owner, self.half_owner = ENVIRONMENT, SYSTEM
            self.first, self.second = self.inputs, self.outputs
        else:
            self.full_owner, self.half_owner = SYSTEM, ENVIRONMENT
            self.first, self.second = self.outputs, self.inputs
        self.vertices = []
        self.edges = []
        self.states = []
        self.index = {}
        self.queue = deque()

    def sink_priority(self, master):
        count = len(self.groups)
        return 2 * count + 1 if master is ltl.TRUE else 2 * count + 2

    def build(self):
        monitors = tuple(initial_group(group) for group in self.groups)
        start = self.vertex(self.full_owner, simplify(self.phi), monitors,
                            AppearanceRecord.initial(len(monitors)), None)
        while self.queue:
            self.expand(self.queue.popleft())
        log.info('built %s game with %d vertices, %d edges and %d monitors',
                 self.fragment, len(self.vertices), len(self.edges), len(self.groups))
        return LabelledParityGame(self.vertices, self.edges, start, self.inputs, self.outputs)

    def vertex(self, owner, master, monitors, record, pending):
        if master.is_constant:
            monitors, record, pending = (), AppearanceRecord(), None
        monitor_keys = tuple(_monitor_key(monitor) for monitor in monitors)
        key = (owner, equivalence_key(master), monitor_keys, record, pending)
        if key in self.index:
            return self.index[key]
        if len(self.vertices) >= self.max_vertices:
            raise BudgetExceeded(self.max_vertices)
        vertex_id = len(self.vertices)
        labelling = Labelling(master, tuple(monitors[monitor].obligations for monitor in record))
        self.vertices.append(Vertex(vertex_id, owner, labelling))
        self.states.append(_VertexState(master, monitors, record, pending))
        self.index[key] = vertex_id
        self.queue.append(vertex_id)
        if vertex_id and vertex_id % 1000 == 0:
            log.debug('%d vertices explored, %d queued', vertex_id, len(self.queue))
        return vertex_id

    def expand(self, vertex_id):
        state = self.states[vertex_id]
        if state.master.is_constant:
            self.edges.append(Edge(vertex_id, vertex_id, self.sink_priority(state.master), ()))
            return
        if state.pending is None:
            for move in _assignments(self.first):
                target = self.vertex(self.half_owner, state.master, state.monitors, state.record, move)
                self.edges.append(Edge(vertex_id, target, self.neutral, move))
            return
        for move in _assignments(self.second):
            letter = frozenset(name for name, value in state.pending + move if value)
            master = after(state.master, letter, self.frozen)
            stepped = [monitor_step(monitor, letter) for monitor in state.monitors]
            priority, record = transition_priority(
                state.record, [monitor.event for monitor in stepped], self.neutral)
            monitors = tuple(monitor._replace(event=NEUTRAL) for monitor in stepped)
            violated = {goal for monitor in monitors for goal in violated_goals(monitor)}
            if violated:
                master = simplify(falsify(master, violated))
            if master.is_constant:
                priority = self.neutral
            target = self.vertex(self.full_owner, master, monitors, record, None)
            self.edges.append(Edge(vertex_id, target, priority, move))


def build_game(phi, inputs, outputs, order=ENV_FIRST, max_vertices=DEFAULT_MAX_VERTICES):
    if isinstance(phi, str):
        phi = parse(phi)
    return GameBuilder(phi, inputs, outputs, order, max_vertices).build()
