"""Semantic ground truth: attribute closure by naive iteration.

Deliberately written against plain frozensets, sharing nothing with the
bitmask machinery the generators use.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .core import AttrSet, FDError, Universe, canonical_attrset

__all__ = [
    "EnumerationCapError",
    "attribute_closure",
    "implies",
    "semantic_fd_set",
    "semantic_fd_count",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 10


class EnumerationCapError(FDError):
    pass


def _rules(initial: Iterable) -> list[tuple[frozenset, frozenset]]:
    return [(frozenset(canonical_attrset(l)), frozenset(canonical_attrset(r))) for l, r in initial]


def _closure(rules, x: frozenset) -> frozenset:
    closed = set(x)
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if lhs <= closed and not rhs <= closed:
                closed |= rhs
                changed = True
    return frozenset(closed)


def attribute_closure(initial: Iterable, x: AttrSet | Iterable[str]) -> AttrSet:
    return AttrSet(tuple(sorted(_closure(_rules(initial), frozenset(canonical_attrset(x))))))


def implies(initial: Iterable, determinant, dependent) -> bool:
    rules = _rules(initial)
    lhs = frozenset(canonical_attrset(determinant))
    return frozenset(canonical_attrset(dependent)) <= _closure(rules, lhs)


def _nonempty_subsets(items):
    items = sorted(items)
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            yield combo


def _universe_names(universe) -> tuple[str, ...]:
    if isinstance(universe, Universe):
        return universe.attrs.names
    return canonical_attrset(universe).names


def semantic_fd_set(
    initial: Iterable, universe: Universe | Iterable[str], cap: int = DEFAULT_CAP
) -> set[tuple[AttrSet, AttrSet]]:
    """Every FD ``X -> Y`` over the universe with nonempty ``Y`` inside ``closure(X)``."""
    names = _universe_names(universe)
    if len(names) > cap:
        raise EnumerationCapError(
            f"universe has {len(names)} attributes; enumeration cap is {cap}"
        )
    rules = _rules(initial)
    out = set()
    for x in _nonempty_subsets(names):
        closed = _closure(rules, frozenset(x))
        lhs = AttrSet(x)
        for y in _nonempty_subsets(closed):
            out.add((lhs, AttrSet(y)))
    return out


def semantic_fd_count(initial: Iterable, universe, cap: int = DEFAULT_CAP) -> int:
    """Size of :func:`semantic_fd_set`, by summing ``2**|closure(X)| - 1``."""
    names = _universe_names(universe)
    if len(names) > cap:
        raise EnumerationCapError(
            f"universe has {len(names)} attributes; enumeration cap is {cap}"
        )
    rules = _rules(initial)
    return sum(2 ** len(_closure(rules, frozenset(x))) - 1 for x in _nonempty_subsets(names))
