"""One-step unfolding of temporal operators and the successor function.

`frozen` formulae are never unfolded: they stand for goals tracked
elsewhere (monitors) and are carried along verbatim.
"""
import functools

from semgame import ltl
from semgame.abstraction import simplify


@functools.lru_cache(maxsize=None)
def _unfold(phi, frozen):
    if phi in frozen or not phi.children or phi.kind == ltl.NEXT:
        return phi
    kind = phi.kind
    if kind == ltl.GLOBALLY:
        return ltl.conjunction(_unfold(phi.children[0], frozen), phi)
    if kind == ltl.FINALLY:
        return ltl.disjunction(_unfold(phi.children[0], frozen), phi)
    if kind == ltl.UNTIL:
        left, right = phi.children
        return ltl.disjunction(_unfold(right, frozen),
                               ltl.conjunction(_unfold(left, frozen), phi))
    if kind == ltl.RELEASE:
        left, right = phi.children
        return ltl.conjunction(_unfold(right, frozen),
                               ltl.disjunction(_unfold(left, frozen), phi))
    return ltl.rebuild(phi, [_unfold(child, frozen) for child in phi.children])


def unfold(phi, frozen=frozenset()):
    return simplify(_unfold(phi, frozenset(frozen)))


def _substitute(phi, letter, frozen):
    if phi in frozen:
        return phi
    kind = phi.kind
    if kind == ltl.ATOM:
        return ltl.TRUE if phi.name in letter else ltl.FALSE
    if kind == ltl.NEXT:
        return phi.children[0]
    if phi.is_temporal or not phi.children:
        return phi
    return ltl.rebuild(phi, [_substitute(child, letter, frozen) for child in phi.children])


@functools.lru_cache(maxsize=None)
def _after(phi, letter, frozen):
    return simplify(_substitute(_unfold(phi, frozen), letter, frozen))


def after(phi, letter, frozen=frozenset()):
    """Residual obligation of phi after reading `letter` (names that hold)."""
    return _after(phi, frozenset(letter), frozenset(frozen))


def clear_caches():
    _unfold.cache_clear()
    _after.cache_clear()
