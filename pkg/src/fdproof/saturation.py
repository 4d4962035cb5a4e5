"""Staged fixpoint controller.

Self-determination runs once after the initial rules are loaded.  The
remaining six generators then run in a fixed order, one stage each, and the
pass repeats until a whole pass inserts nothing.  With a target and early
exit enabled, the run stops after the first stage whose insertions include
the target.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Iterable

from .axioms import generate
from .core import (
    INITIAL,
    AttrSet,
    AxiomTag,
    RuleStore,
    Universe,
    ValidationError,
    canonical_attrset,
)

__all__ = [
    "DEFAULT_ORDER",
    "SaturationConfig",
    "SaturationResult",
    "StageRecord",
    "Status",
    "Saturator",
    "run_stage",
    "saturate",
    "find_target",
    "parse_order",
]

log = logging.getLogger(__name__)

DEFAULT_ORDER = (AxiomTag.AU, AxiomTag.GE, AxiomTag.CO, AxiomTag.UN, AxiomTag.DE, AxiomTag.TR)


def parse_order(text: str | Iterable) -> tuple[AxiomTag, ...]:
    """Parse ``"AU,GE,CO,UN,DE,TR"`` (or an iterable of tags/strings)."""
    if isinstance(text, str):
        items = [t.strip() for t in text.split(",") if t.strip()]
    else:
        items = list(text)
    try:
        order = tuple(t if isinstance(t, AxiomTag) else AxiomTag(t.upper()) for t in items)
    except ValueError as exc:
        raise ValidationError(f"bad generator order {text!r}: {exc}") from None
    if sorted(t.value for t in order) != sorted(t.value for t in DEFAULT_ORDER):
        raise ValidationError(
            "generator order must be a permutation of AU,GE,CO,UN,DE,TR"
        )
    return order


@dataclass(frozen=True)
class SaturationConfig:
    generator_order: tuple[AxiomTag, ...] = DEFAULT_ORDER
    max_rounds: int = 32
    max_rules: int = 200_000
    # None means: early exit iff a target is supplied
    early_exit: bool | None = None

    def __post_init__(self):
        object.__setattr__(self, "generator_order", parse_order(self.generator_order))
        if self.max_rounds < 1 or self.max_rules < 1:
            raise ValidationError("max_rounds and max_rules must be positive")


class Status(enum.Enum):
    FIXPOINT = "FIXPOINT"
    TARGET_FOUND = "TARGET_FOUND"
    ROUND_LIMIT = "ROUND_LIMIT"
    RULE_LIMIT = "RULE_LIMIT"


@dataclass(frozen=True)
class StageRecord:
    round: int
    generator: AxiomTag
    new_rules: int
    total_rules: int


@dataclass
class SaturationResult:
    store: RuleStore
    status: Status
    target_id: int | None = None
    trace: list[StageRecord] = field(default_factory=list)
    rounds: int = 0


class RuleLimit(Exception):
    pass


class Saturator:
    """Runs generator stages against a store, remembering how far each got.

    ``done[tag]`` is the store size at the last complete stage of ``tag``;
    the next stage of the same generator only enumerates rules above it.
    """

    def __init__(self, store: RuleStore, max_rules: int | None = None):
        self.store = store
        self.max_rules = max_rules
        self.done: dict[AxiomTag, int] = {}

    def run_stage(self, generator: AxiomTag) -> int:
        if generator is AxiomTag.IN:
            raise ValidationError("IN is not a generator")
        store = self.store
        snap = store.snapshot()
        batch = generate(generator, snap, since=self.done.get(generator, 0))
        inserted = 0
        for lhs, rhs, prov in batch.candidates:
            if self.max_rules is not None and len(store) >= self.max_rules:
                raise RuleLimit(inserted)
            _, new = store.insert_masks(lhs, rhs, prov)
            inserted += new
        self.done[generator] = len(snap)
        return inserted


def run_stage(store: RuleStore, generator: AxiomTag, universe: Universe | None = None) -> int:
    """Run one generator over a frozen snapshot of *store* and insert its batch."""
    if universe is not None and universe != store.universe:
        raise ValidationError("universe does not match the store")
    return Saturator(store).run_stage(generator)


def _coerce_pair(pair) -> tuple[AttrSet, AttrSet]:
    lhs, rhs = pair
    return canonical_attrset(lhs), canonical_attrset(rhs)


def saturate(
    initial: Iterable,
    universe: Universe | Iterable[str],
    config: SaturationConfig | None = None,
    target=None,
) -> SaturationResult:
    """Saturate *initial* under the generators; see module docstring."""
    config = config or SaturationConfig()
    if not isinstance(universe, Universe):
        universe = Universe(universe)
    store = RuleStore(universe)
    for pair in initial:
        lhs, rhs = _coerce_pair(pair)
        rid, new = store.insert(lhs, rhs, INITIAL)
        if not new:
            raise ValidationError(f"duplicate initial rule {lhs} -> {rhs} (same as rule {rid})")

    target_key = None
    if target is not None:
        t_lhs, t_rhs = _coerce_pair(target)
        if not t_lhs or not t_rhs:
            raise ValidationError("target must have nonempty sides")
        target_key = (universe.mask(t_lhs), universe.mask(t_rhs))
    early_exit = config.early_exit if config.early_exit is not None else target_key is not None

    result = SaturationResult(store, Status.FIXPOINT)

    def hit() -> bool:
        if target_key is None:
            return False
        result.target_id = store.index.get(target_key)
        return early_exit and result.target_id is not None

    if hit():
        result.status = Status.TARGET_FOUND
        return result

    sat = Saturator(store, config.max_rules)
    stage = (0, AxiomTag.SE)
    try:
        n = sat.run_stage(AxiomTag.SE)
        result.trace.append(StageRecord(0, AxiomTag.SE, n, len(store)))
        if hit():
            result.status = Status.TARGET_FOUND
            return result
        for rnd in range(1, config.max_rounds + 1):
            result.rounds = rnd
            added = 0
            for tag in config.generator_order:
                stage = (rnd, tag)
                n = sat.run_stage(tag)
                added += n
                result.trace.append(StageRecord(rnd, tag, n, len(store)))
                if hit():
                    result.status = Status.TARGET_FOUND
                    return result
            log.debug("round %d: +%d rules (%d total)", rnd, added, len(store))
            if not added:
                result.status = Status.FIXPOINT
                hit()
                return result
        result.status = Status.ROUND_LIMIT
    except RuleLimit as exc:
        result.trace.append(StageRecord(stage[0], stage[1], exc.args[0], len(store)))
        result.status = Status.RULE_LIMIT
    hit()
    return result


def find_target(store: RuleStore, determinant, dependent) -> int | None:
    return store.find(canonical_attrset(determinant), canonical_attrset(dependent))
