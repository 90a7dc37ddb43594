"""Process-wide memo tables of the formula layer."""
import logging

from semgame import abstraction, ltl, trueness, unfolding


log = logging.getLogger(__name__)


def clear():
    """Forgets every memoized result and the shared BDD manager.

    Formulae obtained before stay valid, but simplification may pick other
    representatives afterwards, so never call this in the middle of a build.
    """
    ltl.clear_caches()
    unfolding.clear_caches()
    trueness.clear_caches()
    abstraction.reset()
    log.debug('formula caches cleared')
