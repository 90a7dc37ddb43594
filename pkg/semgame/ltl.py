"""LTL syntax trees.

Formulae are hash-consed: building the same tree twice yields the same
object, so identity comparison is structural comparison and formulae can be
used directly as dictionary keys. The store is a module global and is meant
to be used from a single worker; formulae cross process boundaries as text.
It only holds formulae that are still referenced elsewhere.
"""
import functools
import itertools
import weakref


TRUE_KIND = 'true'
FALSE_KIND = 'false'
ATOM = 'atom'
NOT = 'not'
AND = 'and'
OR = 'or'
NEXT = 'next'
UNTIL = 'until'
RELEASE = 'release'
FINALLY = 'finally'
GLOBALLY = 'globally'

TEMPORAL = frozenset((NEXT, UNTIL, RELEASE, FINALLY, GLOBALLY))
BINARY = (AND, OR, UNTIL, RELEASE)
UNARY_SYMBOLS = {
    NEXT: 'X',
    FINALLY: 'F',
    GLOBALLY: 'G',
}
BINARY_SYMBOLS = {
    UNTIL: 'U',
    RELEASE: 'R',
}


class Formula(object):
    __slots__ = ('kind', 'name', 'children', 'index', 'text', '__weakref__')

    def __repr__(self):
        return 'Formula({!r})'.format(self.text)

    def __str__(self):
        return self.text

    def __lt__(self, other):
        return self.index < other.index

    @property
    def is_temporal(self):
        return self.kind in TEMPORAL

    @property
    def is_constant(self):
        return self.kind in (TRUE_KIND, FALSE_KIND)


_store = weakref.WeakValueDictionary()
_counter = itertools.count()


def _make(kind, children=(), name=None):
    key = (kind, name, tuple(child.index for child in children))
    formula = _store.get(key)
    if formula is None:
        formula = Formula()
        formula.kind = kind
        formula.name = name
        formula.children = children
        formula.index = next(_counter)
        formula.text = _render(kind, name, children)
        _store[key] = formula
    return formula


def _wrap(formula, kinds):
    if formula.kind in kinds:
        return '({})'.format(formula.text)
    return formula.text


def _render(kind, name, children):
    if kind == TRUE_KIND:
        return 'tt'
    if kind == FALSE_KIND:
        return 'ff'
    if kind == ATOM:
        return name
    if kind == NOT:
        return '!' + _wrap(children[0], BINARY)
    if kind in UNARY_SYMBOLS:
        return '{} {}'.format(UNARY_SYMBOLS[kind], _wrap(children[0], BINARY))
    if kind in BINARY_SYMBOLS:
        left, right = children
        return '{} {} {}'.format(_wrap(left, BINARY), BINARY_SYMBOLS[kind], _wrap(right, (AND, OR)))
    if kind == AND:
        return ' & '.join(_wrap(child, (OR,)) for child in children)
    return ' | '.join(child.text for child in children)


TRUE = _make(TRUE_KIND)
FALSE = _make(FALSE_KIND)


def atom(name):
    return _make(ATOM, name=name)


def negation(operand):
    if operand is TRUE:
        return FALSE
    if operand is FALSE:
        return TRUE
    if operand.kind == NOT:
        return operand.children[0]
    return _make(NOT, (operand,))


def _junction(kind, unit, zero, operands):
    flat = {}
    for operand in operands:
        if operand is zero:
            return zero
        if operand is unit:
            continue
        parts = operand.children if operand.kind == kind else (operand,)
        for part in parts:
            flat[part.index] = part
    if not flat:
        return unit
    if len(flat) == 1:
        return next(iter(flat.values()))
    return _make(kind, tuple(sorted(flat.values(), key=lambda part: part.text)))


def conjunction(*operands):
    return _junction(AND, TRUE, FALSE, operands)


def disjunction(*operands):
    return _junction(OR, FALSE, TRUE, operands)


def next_(operand):
    if operand.is_constant:
        return operand
    return _make(NEXT, (operand,))


def eventually(operand):
    if operand.is_constant or operand.kind == FINALLY:
        return operand
    return _make(FINALLY, (operand,))


def always(operand):
    if operand.is_constant or operand.kind == GLOBALLY:
        return operand
    return _make(GLOBALLY, (operand,))


def until(left, right):
    if right.is_constant:
        return right
    if left is FALSE:
        return right
    if left is TRUE:
        return eventually(right)
    return _make(UNTIL, (left, right))


def release(left, right):
    if right.is_constant:
        return right
    if left is TRUE:
        return right
    if left is FALSE:
        return always(right)
    return _make(RELEASE, (left, right))


def rebuild(formula, children):
    """Same connective as `formula`, applied to new `children`."""
    kind = formula.kind
    if kind == NOT:
        return negation(children[0])
    if kind == AND:
        return conjunction(*children)
    if kind == OR:
        return disjunction(*children)
    if kind == NEXT:
        return next_(children[0])
    if kind == FINALLY:
        return eventually(children[0])
    if kind == GLOBALLY:
        return always(children[0])
    if kind == UNTIL:
        return until(*children)
    if kind == RELEASE:
        return release(*children)
    return formula


def subformulas(phi):
    found = set()
    pending = [phi]
    while pending:
        formula = pending.pop()
        if formula not in found:
            found.add(formula)
            pending.extend(formula.children)
    return found


def top_operators(phi):
    found = set()
    pending = [phi]
    while pending:
        formula = pending.pop()
        if formula.is_temporal:
            found.add(formula)
        else:
            pending.extend(formula.children)
    return found


def atoms(phi):
    return {formula.name for formula in subformulas(phi) if formula.kind == ATOM}


def atoms_outside_temporal(phi):
    found = set()
    pending = [phi]
    while pending:
        formula = pending.pop()
        if formula.kind == ATOM:
            found.add(formula.name)
        elif not formula.is_temporal:
            pending.extend(formula.children)
    return found


def kinds(phi):
    return {formula.kind for formula in subformulas(phi)}


def size(phi):
    return 1 + sum(size(child) for child in phi.children)


@functools.lru_cache(maxsize=None)
def nnf(phi):
    if phi.kind == NOT:
        return _negated_nnf(phi.children[0])
    if not phi.children:
        return phi
    return rebuild(phi, [nnf(child) for child in phi.children])


@functools.lru_cache(maxsize=None)
def _negated_nnf(phi):
    kind = phi.kind
    if kind in (TRUE_KIND, FALSE_KIND, ATOM):
        return negation(phi)
    if kind == NOT:
        return nnf(phi.children[0])
    negated = [_negated_nnf(child) for child in phi.children]
    if kind == AND:
        return disjunction(*negated)
    if kind == OR:
        return conjunction(*negated)
    if kind == NEXT:
        return next_(negated[0])
    if kind == FINALLY:
        return always(negated[0])
    if kind == GLOBALLY:
        return eventually(negated[0])
    if kind == UNTIL:
        return release(*negated)
    return until(*negated)


def clear_caches():
    nnf.cache_clear()
    _negated_nnf.cache_clear()


def is_nnf(phi):
    return all(formula.children[0].kind == ATOM
               for formula in subformulas(phi) if formula.kind == NOT)


def eval_lasso(phi, prefix, loop):
    """Whether the word prefix . loop^omega satisfies phi.

    Letters are collections of the atom names that hold at that step.
    """
    if not loop:
        raise ValueError('loop must not be empty')
    word = [frozenset(letter) for letter in itertools.chain(prefix, loop)]
    successor = list(range(1, len(word))) + [len(prefix)]
    return _evaluate(phi, word, successor, {})[0]


def _fixpoint(step, initial, length):
    values = [initial] * length
    changed = True
    while changed:
        changed = False
        for position in reversed(range(length)):
            value = step(position, values)
            if value != values[position]:
                values[position] = value
                changed = True
    return values


def _evaluate(phi, word, successor, memo):
    if phi in memo:
        return memo[phi]
    length = len(word)
    kind = phi.kind
    children = [_evaluate(child, word, successor, memo) for child in phi.children]
    if kind == TRUE_KIND:
        values = [True] * length
    elif kind == FALSE_KIND:
        values = [False] * length
    elif kind == ATOM:
        values = [phi.name in letter for letter in word]
    elif kind == NOT:
        values = [not value for value in children[0]]
    elif kind == AND:
        values = [all(child[i] for child in children) for i in range(length)]
    elif kind == OR:
        values = [any(child[i] for child in children) for i in range(length)]
    elif kind == NEXT:
        values = [children[0][successor[i]] for i in range(length)]
    elif kind == FINALLY:
        (body,) = children
        values = _fixpoint(lambda i, v: body[i] or v[successor[i]], False, length)
    elif kind == GLOBALLY:
        (body,) = children
        values = _fixpoint(lambda i, v: body[i] and v[successor[i]], True, length)
    elif kind == UNTIL:
        left, right = children
        values = _fixpoint(lambda i, v: right[i] or (left[i] and v[successor[i]]), False, length)
    else:
        left, right = children
        values = _fixpoint(lambda i, v: right[i] and (left[i] or v[successor[i]]), True, length)
    memo[phi] = values
    return values
