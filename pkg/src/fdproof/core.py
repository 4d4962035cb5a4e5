"""Attribute sets, FD records and the deduplicating rule store.

Attribute sets are kept in canonical form (sorted, duplicate-free), so two
sets built from different permutations of the same names compare equal and
hash identically.  The rule store additionally encodes every set as an
integer bitmask over its universe; that is the representation the
generators work on.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "FDError",
    "ValidationError",
    "IntegrityError",
    "UnknownRuleError",
    "AttrSet",
    "AxiomTag",
    "Provenance",
    "FD",
    "Universe",
    "RuleStore",
    "Snapshot",
    "canonical_attrset",
    "attrset_union",
    "attrset_difference",
    "attrset_member",
    "attrset_subset",
    "attrset_insert",
    "store_insert",
    "store_find",
    "store_get",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class FDError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(FDError, ValueError):
    pass


class IntegrityError(FDError):
    pass


class UnknownRuleError(FDError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown rule"


def check_attribute(name: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise ValidationError(f"invalid attribute name: {name!r}")
    return name


@dataclass(frozen=True)
class AttrSet:
    """Canonical set of attribute names, stored as a strictly sorted tuple."""

    names: tuple[str, ...] = ()

    @classmethod
    def of(cls, *names: str) -> "AttrSet":
        return canonical_attrset(names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __bool__(self) -> bool:
        return bool(self.names)

    def __or__(self, other: "AttrSet") -> "AttrSet":
        return attrset_union(self, other)

    def __sub__(self, other: "AttrSet") -> "AttrSet":
        return attrset_difference(self, other)

    def __and__(self, other: "AttrSet") -> "AttrSet":
        keep = set(other.names)
        return AttrSet(tuple(n for n in self.names if n in keep))

    def __le__(self, other: "AttrSet") -> bool:
        return attrset_subset(self, other)

    def __lt__(self, other: "AttrSet") -> bool:
        return self != other and attrset_subset(self, other)

    def __str__(self) -> str:
        return " ".join(self.names)

    def __repr__(self) -> str:
        return f"AttrSet({' '.join(self.names)!r})"


def canonical_attrset(names: Iterable[str]) -> AttrSet:
    """Validate *names* and return them as a sorted, deduplicated AttrSet.

    A bare string is treated as whitespace-separated names, so
    ``canonical_attrset("C A B")`` gives ``{A,B,C}``.
    """
    if isinstance(names, AttrSet):
        return names
    if isinstance(names, str):
        names = names.split()
    return AttrSet(tuple(sorted({check_attribute(n) for n in names})))


def attrset_union(a: AttrSet, b: AttrSet) -> AttrSet:
    if not b.names:
        return a
    if not a.names:
        return b
    return AttrSet(tuple(sorted(set(a.names).union(b.names))))


def attrset_difference(a: AttrSet, b: AttrSet) -> AttrSet:
    drop = set(b.names)
    return AttrSet(tuple(n for n in a.names if n not in drop))


def attrset_member(s: AttrSet, name: str) -> bool:
    return name in s.names


def attrset_subset(a: AttrSet, b: AttrSet) -> bool:
    return set(a.names) <= set(b.names)


def attrset_insert(s: AttrSet, name: str) -> AttrSet:
    if name in s.names:
        return s
    return AttrSet(tuple(sorted(s.names + (check_attribute(name),))))


class AxiomTag(enum.Enum):
    IN = "IN"
    SE = "SE"
    AU = "AU"
    GE = "GE"
    CO = "CO"
    UN = "UN"
    DE = "DE"
    TR = "TR"

    @property
    def title(self) -> str:
        return _TITLES[self]

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @classmethod
    def from_title(cls, title: str) -> "AxiomTag":
        for tag, t in _TITLES.items():
            if t == title:
                return tag
        raise ValidationError(f"unknown axiom name: {title!r}")

    def __str__(self) -> str:
        return self.value


_TITLES = {
    AxiomTag.IN: "Initial FD",
    AxiomTag.SE: "Self-determination",
    AxiomTag.AU: "Augmentation",
    AxiomTag.GE: "General Unification",
    AxiomTag.CO: "Composition",
    AxiomTag.UN: "Union",
    AxiomTag.DE: "Decomposition",
    AxiomTag.TR: "Transitivity",
}

_ARITY = {
    AxiomTag.IN: 0,
    AxiomTag.SE: 0,
    AxiomTag.AU: 1,
    AxiomTag.DE: 1,
    AxiomTag.TR: 2,
    AxiomTag.UN: 2,
    AxiomTag.CO: 2,
    AxiomTag.GE: 2,
}


class Provenance(NamedTuple):
    """Axiom that produced a rule plus the ids of the rules it was built from."""

    axiom: AxiomTag
    parents: tuple[int, ...] = ()

    def check_arity(self) -> None:
        if len(self.parents) != self.axiom.arity:
            raise ValidationError(
                f"{self.axiom.value} takes {self.axiom.arity} parent(s), "
                f"got {len(self.parents)}"
            )


INITIAL = Provenance(AxiomTag.IN, ())


@dataclass(frozen=True)
class FD:
    id: int
    determinant: AttrSet
    dependent: AttrSet
    provenance: Provenance

    @property
    def key(self) -> tuple[AttrSet, AttrSet]:
        return (self.determinant, self.dependent)

    def __str__(self) -> str:
        return f"{self.determinant} -> {self.dependent}"


class Universe:
    """The attributes of a relation, with a bit assigned to each name.

    Bits follow the canonical order: the lexicographically smallest name is
    bit 0, so the lowest set bit of a mask is the head of the canonical set.
    """

    def __init__(self, attrs: Iterable[str] | AttrSet):
        self.attrs = canonical_attrset(attrs)
        self._bit = {name: 1 << i for i, name in enumerate(self.attrs.names)}
        self._decoded: dict[int, AttrSet] = {}

    def __len__(self) -> int:
        return len(self.attrs)

    def __iter__(self) -> Iterator[str]:
        return iter(self.attrs)

    def __contains__(self, name: object) -> bool:
        return name in self._bit

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Universe) and other.attrs == self.attrs

    def __hash__(self) -> int:
        return hash(self.attrs)

    def __repr__(self) -> str:
        return f"Universe({str(self.attrs)!r})"

    @property
    def full_mask(self) -> int:
        return (1 << len(self.attrs)) - 1

    def bits(self) -> list[int]:
        """Single-attribute masks in ascending name order."""
        return [1 << i for i in range(len(self.attrs))]

    def mask(self, s: AttrSet | Iterable[str]) -> int:
        s = canonical_attrset(s)
        m = 0
        for name in s.names:
            try:
                m |= self._bit[name]
            except KeyError:
                raise ValidationError(f"attribute {name!r} is not in the universe") from None
        return m

    def decode(self, mask: int) -> AttrSet:
        s = self._decoded.get(mask)
        if s is None:
            names = self.attrs.names
            s = AttrSet(tuple(names[i] for i in range(len(names)) if mask >> i & 1))
            self._decoded[mask] = s
        return s


class RuleStore:
    """Append-only arena of FDs with a dedup index on (determinant, dependent).

    Rule ids are 1-based and dense.  Re-inserting an existing pair is a no-op
    that returns the id of the first derivation.
    """

    def __init__(self, universe: Universe | Iterable[str]):
        if not isinstance(universe, Universe):
            universe = Universe(universe)
        self.universe = universe
        self.lhs: list[int] = []
        self.rhs: list[int] = []
        self.provenance: list[Provenance] = []
        self.index: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.lhs)

    def __iter__(self) -> Iterator[FD]:
        for i in range(1, len(self.lhs) + 1):
            yield self.get(i)

    def insert(
        self, determinant: AttrSet, dependent: AttrSet, prov: Provenance = INITIAL
    ) -> tuple[int, bool]:
        u = self.universe
        return self.insert_masks(u.mask(determinant), u.mask(dependent), prov)

    def insert_masks(self, lhs: int, rhs: int, prov: Provenance) -> tuple[int, bool]:
        if not lhs or not rhs:
            raise ValidationError("determinant and dependent must be nonempty")
        if lhs & ~self.universe.full_mask or rhs & ~self.universe.full_mask:
            raise ValidationError("rule mentions attributes outside the universe")
        existing = self.index.get((lhs, rhs))
        if existing is not None:
            return existing, False
        prov.check_arity()
        n = len(self.lhs)
        for p in prov.parents:
            if not 1 <= p <= n:
                raise IntegrityError(f"provenance refers to unknown rule {p}")
        self.lhs.append(lhs)
        self.rhs.append(rhs)
        self.provenance.append(prov)
        self.index[(lhs, rhs)] = n + 1
        return n + 1, True

    def find(self, determinant: AttrSet, dependent: AttrSet) -> int | None:
        u = self.universe
        try:
            key = (u.mask(determinant), u.mask(dependent))
        except ValidationError:
            return None
        return self.index.get(key)

    def get(self, rule_id: int) -> FD:
        if not isinstance(rule_id, int) or not 1 <= rule_id <= len(self.lhs):
            raise UnknownRuleError(f"no rule with id {rule_id}")
        i = rule_id - 1
        u = self.universe
        return FD(rule_id, u.decode(self.lhs[i]), u.decode(self.rhs[i]), self.provenance[i])

    def snapshot(self) -> "Snapshot":
        return Snapshot(self)

    def rule_set(self) -> set[tuple[AttrSet, AttrSet]]:
        """All (determinant, dependent) pairs, ignoring ids and provenance."""
        u = self.universe
        return {(u.decode(l), u.decode(r)) for l, r in zip(self.lhs, self.rhs)}


class Snapshot:
    """Frozen prefix of a RuleStore; later insertions into the store are invisible."""

    def __init__(self, store: RuleStore):
        self.universe = store.universe
        self.lhs = tuple(store.lhs)
        self.rhs = tuple(store.rhs)
        self._index = store.index
        self._size = len(self.lhs)

    def __len__(self) -> int:
        return self._size

    def contains(self, lhs: int, rhs: int) -> bool:
        rid = self._index.get((lhs, rhs))
        return rid is not None and rid <= self._size

    def find(self, determinant: AttrSet, dependent: AttrSet) -> int | None:
        u = self.universe
        try:
            rid = self._index.get((u.mask(determinant), u.mask(dependent)))
        except ValidationError:
            return None
        return rid if rid is not None and rid <= self._size else None


def store_insert(
    store: RuleStore, determinant: AttrSet, dependent: AttrSet, prov: Provenance
) -> tuple[int, bool]:
    return store.insert(determinant, dependent, prov)


def store_find(store: RuleStore, determinant: AttrSet, dependent: AttrSet) -> int | None:
    return store.find(determinant, dependent)


def store_get(store: RuleStore, rule_id: int) -> FD:
    return store.get(rule_id)
