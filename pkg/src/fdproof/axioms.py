"""The seven Armstrong-axiom generators and the matching step checker.

Each generator reads a frozen :class:`~fdproof.core.Snapshot` and returns a
:class:`GenBatch` of candidate rules, suppressing candidates already in the
snapshot or earlier in the same batch.  Enumeration is deterministic:
rules by ascending id, pairs ``(i, j)`` with ``i < j`` in row-major order,
attributes in ascending name order.

Generators take an optional ``since`` (a rule count).  Only rules, or pairs
involving a rule, with an id greater than ``since`` are enumerated.  If the
store already absorbed a full batch of the same generator when it held
``since`` rules, the result is identical to a full enumeration, because
every candidate of the skipped rules and pairs is already in the snapshot.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import (
    AttrSet,
    AxiomTag,
    FD,
    Provenance,
    RuleStore,
    Snapshot,
    Universe,
    ValidationError,
    canonical_attrset,
)

__all__ = [
    "GenBatch",
    "gen_selfdet",
    "gen_aug",
    "gen_trans",
    "gen_decomp",
    "gen_union",
    "gen_comp",
    "gen_genuni",
    "generate",
    "check_step",
    "GENERATORS",
]

Candidate = tuple[int, int, Provenance]


@dataclass
class GenBatch:
    """Candidates produced by one generator call, as bitmasks over ``universe``."""

    universe: Universe
    candidates: list[Candidate] = field(default_factory=list)

    @property
    def changed(self) -> bool:
        return bool(self.candidates)

    @property
    def produced(self) -> list[tuple[AttrSet, AttrSet, Provenance]]:
        d = self.universe.decode
        return [(d(l), d(r), p) for l, r, p in self.candidates]

    def __len__(self) -> int:
        return len(self.candidates)


def _view(snapshot: RuleStore | Snapshot) -> Snapshot:
    return snapshot.snapshot() if isinstance(snapshot, RuleStore) else snapshot


class _Collector:
    """Accumulates a batch, dropping keys already in the snapshot or the batch.

    Hot loops bind ``blocked``/``index``/``size`` locally and test
    ``key in blocked or index.get(key, big) <= size`` inline.
    """

    def __init__(self, snap: Snapshot):
        self.snap = snap
        self.blocked: set[tuple[int, int]] = set()
        self.index = snap._index
        self.size = len(snap)
        self.big = self.size + 1
        self.out: list[Candidate] = []

    def offer(self, lhs: int, rhs: int, axiom: AxiomTag, parents: tuple[int, ...]) -> None:
        key = (lhs, rhs)
        if key in self.blocked or self.index.get(key, self.big) <= self.size:
            return
        self.blocked.add(key)
        self.out.append((lhs, rhs, Provenance(axiom, parents)))


def gen_selfdet(snapshot, universe: Universe | None = None) -> GenBatch:
    snap = _view(snapshot)
    universe = universe or snap.universe
    col = _Collector(snap)
    for b in _bits_in(universe, snap.universe):
        col.offer(b, b, AxiomTag.SE, ())
    return GenBatch(snap.universe, col.out)


def gen_aug(snapshot, universe: Universe | None = None, since: int = 0) -> GenBatch:
    snap = _view(snapshot)
    universe = universe or snap.universe
    bits = _bits_in(universe, snap.universe)
    col = _Collector(snap)
    L, R = snap.lhs, snap.rhs
    for i in range(since, len(L)):
        x, y = L[i], R[i]
        parents = (i + 1,)
        for b in bits:
            col.offer(x | b, y | b, AxiomTag.AU, parents)
    return GenBatch(snap.universe, col.out)


def gen_trans(snapshot, since: int = 0) -> GenBatch:
    snap = _view(snapshot)
    col = _Collector(snap)
    L, R = snap.lhs, snap.rhs
    n = len(L)
    for i in range(n):
        x1, y1 = L[i], R[i]
        for j in range(max(i + 1, since), n):
            x2, y2 = L[j], R[j]
            # if/else: at most one conclusion per pair
            if y1 == x2:
                col.offer(x1, y2, AxiomTag.TR, (i + 1, j + 1))
            elif y2 == x1:
                col.offer(x2, y1, AxiomTag.TR, (i + 1, j + 1))
    return GenBatch(snap.universe, col.out)


def gen_decomp(snapshot, since: int = 0) -> GenBatch:
    snap = _view(snapshot)
    col = _Collector(snap)
    L, R = snap.lhs, snap.rhs
    for i in range(since, len(L)):
        y = R[i]
        head = y & -y
        tail = y ^ head
        if tail:
            col.offer(L[i], head, AxiomTag.DE, (i + 1,))
            col.offer(L[i], tail, AxiomTag.DE, (i + 1,))
    return GenBatch(snap.universe, col.out)


def gen_union(snapshot, since: int = 0) -> GenBatch:
    snap = _view(snapshot)
    col = _Collector(snap)
    L, R = snap.lhs, snap.rhs
    n = len(L)
    for i in range(n):
        x1, y1 = L[i], R[i]
        for j in range(max(i + 1, since), n):
            if L[j] == x1:
                col.offer(x1, y1 | R[j], AxiomTag.UN, (i + 1, j + 1))
    return GenBatch(snap.universe, col.out)


def gen_comp(snapshot, since: int = 0) -> GenBatch:
    snap = _view(snapshot)
    col = _Collector(snap)
    blocked, index, size, big, out = col.blocked, col.index, col.size, col.big, col.out
    L, R = snap.lhs, snap.rhs
    n = len(L)
    CO = AxiomTag.CO
    for i in range(n):
        x1, y1 = L[i], R[i]
        for j in range(max(i + 1, since), n):
            key = (x1 | L[j], y1 | R[j])
            if key in blocked or index.get(key, big) <= size:
                continue
            blocked.add(key)
            out.append((key[0], key[1], Provenance(CO, (i + 1, j + 1))))
    return GenBatch(snap.universe, out)


def gen_genuni(snapshot, since: int = 0) -> GenBatch:
    snap = _view(snapshot)
    col = _Collector(snap)
    blocked, index, size, big, out = col.blocked, col.index, col.size, col.big, col.out
    L, R = snap.lhs, snap.rhs
    n = len(L)
    GE = AxiomTag.GE
    for i in range(n):
        x1, y1 = L[i], R[i]
        for j in range(max(i + 1, since), n):
            x2, y2 = L[j], R[j]
            dep = y1 | y2
            d21 = x2 & ~y1
            if d21:
                key = (x1 | d21, dep)
                if not (key in blocked or index.get(key, big) <= size):
                    blocked.add(key)
                    out.append((key[0], dep, Provenance(GE, (i + 1, j + 1))))
            d12 = x1 & ~y2
            if d12:
                key = (x2 | d12, dep)
                if not (key in blocked or index.get(key, big) <= size):
                    blocked.add(key)
                    out.append((key[0], dep, Provenance(GE, (j + 1, i + 1))))
    return GenBatch(snap.universe, out)


def _bits_in(universe: Universe, store_universe: Universe) -> list[int]:
    if universe is store_universe or universe == store_universe:
        return store_universe.bits()
    return [store_universe.mask([a]) for a in universe]


GENERATORS: dict[AxiomTag, Callable[..., GenBatch]] = {
    AxiomTag.SE: gen_selfdet,
    AxiomTag.AU: gen_aug,
    AxiomTag.GE: gen_genuni,
    AxiomTag.CO: gen_comp,
    AxiomTag.UN: gen_union,
    AxiomTag.DE: gen_decomp,
    AxiomTag.TR: gen_trans,
}


def generate(axiom: AxiomTag, snapshot, since: int = 0) -> GenBatch:
    """Dispatch to the generator for *axiom* (universe taken from the snapshot)."""
    if axiom is AxiomTag.SE:
        return gen_selfdet(snapshot)
    if axiom is AxiomTag.AU:
        return gen_aug(snapshot, since=since)
    try:
        return GENERATORS[axiom](snapshot, since=since)
    except KeyError:
        raise ValidationError(f"no generator for {axiom.value}") from None


def _sides(p) -> tuple[frozenset, frozenset]:
    if isinstance(p, FD):
        return frozenset(p.determinant), frozenset(p.dependent)
    lhs, rhs = p
    return frozenset(canonical_attrset(lhs)), frozenset(canonical_attrset(rhs))


def check_step(
    axiom: AxiomTag,
    parents: Sequence,
    determinant: AttrSet | Iterable[str],
    dependent: AttrSet | Iterable[str],
    universe: Universe | Iterable[str],
    *,
    strict_decomposition: bool = True,
) -> bool:
    """True iff ``determinant -> dependent`` follows from *parents* by *axiom*.

    Parents are FDs or ``(determinant, dependent)`` pairs, in provenance order.
    With ``strict_decomposition`` (the default) a decomposition must split
    off exactly the head or the tail of the parent's sorted dependent, which
    is what the generator emits; otherwise any nonempty proper subset passes.
    """
    if axiom is AxiomTag.IN:
        raise ValidationError("initial rules are not derivation steps")
    if len(parents) != axiom.arity:
        raise ValidationError(
            f"{axiom.value} takes {axiom.arity} parent(s), got {len(parents)}"
        )
    attrs = frozenset(universe.attrs if isinstance(universe, Universe) else canonical_attrset(universe))
    X = frozenset(canonical_attrset(determinant))
    Y = frozenset(canonical_attrset(dependent))
    if not X or not Y or not (X | Y) <= attrs:
        return False
    ps = [_sides(p) for p in parents]

    if axiom is AxiomTag.SE:
        return len(X) == 1 and X == Y
    if axiom is AxiomTag.AU:
        (x, y), = ps
        return any(X == x | {a} and Y == y | {a} for a in attrs)
    if axiom is AxiomTag.DE:
        (x, y), = ps
        if X != x or len(y) < 2:
            return False
        if not strict_decomposition:
            return Y < y
        ordered = sorted(y)
        return Y == {ordered[0]} or Y == frozenset(ordered[1:])
    (x1, y1), (x2, y2) = ps
    if axiom is AxiomTag.TR:
        if y1 == x2:
            return X == x1 and Y == y2
        return y2 == x1 and X == x2 and Y == y1
    if axiom is AxiomTag.UN:
        return x1 == x2 and X == x1 and Y == y1 | y2
    if axiom is AxiomTag.CO:
        return X == x1 | x2 and Y == y1 | y2
    if axiom is AxiomTag.GE:
        diff = x2 - y1
        return bool(diff) and X == x1 | diff and Y == y1 | y2
    raise ValidationError(f"unknown axiom {axiom!r}")
