"""Deliberately broken variants of library internals, for mutation testing."""

from __future__ import annotations

import contextlib
from typing import Dict, Iterator

from unittest import mock

from .. import prevcore, shadow, transforms


def _minP_as_max(Q):
    return prevcore.combine("sup", list(Q.gens))


def _closure_keeps_all(gens):
    return tuple(gens)


def _hull_without_ones_ray(a):
    return [a]


MUTANTS: Dict[str, tuple] = {
    "minP-max": (transforms, "minP", _minP_as_max),
    "drop-shadow-closure": (shadow, "_shadow_closure", _closure_keeps_all),
    "drop-ones-ray": (transforms, "_two_ray_hull", _hull_without_ones_ray),
}


@contextlib.contextmanager
def inject(name: str) -> Iterator[None]:
    """Install the named mutant for the duration of the block."""
    if name not in MUTANTS:
        raise KeyError(f"unknown mutant {name!r}; known: {', '.join(sorted(MUTANTS))}")
    module, attr, repl = MUTANTS[name]
    with mock.patch.object(module, attr, repl):
        _clear_caches()
        try:
            yield
        finally:
            _clear_caches()


def _clear_caches() -> None:
    for fn in (prevcore.classify, prevcore.leq_witness, prevcore.active_pieces, prevcore.gauge_vertex_form):
        clear = getattr(fn, "cache_clear", None)
        if clear is not None:
            clear()
