"""Proof extraction, validation and rendering.

A proof is a tree whose leaves are initial rules (IN) or single-attribute
identities (SE) and whose internal nodes are axiom applications.  Subtrees
that prove the same rule are shared objects, so walks below memoize by node
identity.

Text formats:

``paper``
    nested braces, ``{child,child(Axiom Name) => LHS-->RHS}``; leaves are
    bare ``LHS-->RHS``.
``steps``
    one numbered line per distinct node in dependency order.
``graph``
    a dot digraph, premise -> conclusion.
``json``
    a list of ``{id, lhs, rhs, axiom, parents}`` objects.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from typing import Iterable

from .axioms import check_step
from .core import (
    AttrSet,
    AxiomTag,
    IntegrityError,
    RuleStore,
    Universe,
    ValidationError,
    canonical_attrset,
)
from .saturation import SaturationConfig, SaturationResult, Status, saturate

__all__ = [
    "ProofTree",
    "ProofSyntaxError",
    "ProveOutcome",
    "prove",
    "extract_proof",
    "validate_proof",
    "explain_proof",
    "render",
    "parse_paper_proof",
    "proof_steps",
    "format_attrs",
    "FORMATS",
]

FORMATS = ("paper", "steps", "graph", "json")


@dataclass(frozen=True, eq=False)
class ProofTree:
    determinant: AttrSet
    dependent: AttrSet
    axiom: AxiomTag
    children: tuple["ProofTree", ...] = ()
    source_id: int | None = None

    @property
    def conclusion(self) -> tuple[AttrSet, AttrSet]:
        return (self.determinant, self.dependent)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def nodes(self) -> list["ProofTree"]:
        """Distinct nodes in post-order (children before parents)."""
        out: list[ProofTree] = []
        seen: set[int] = set()

        def walk(t):
            if id(t) in seen:
                return
            seen.add(id(t))
            for c in t.children:
                walk(c)
            out.append(t)

        walk(self)
        return out

    def axioms(self) -> list[AxiomTag]:
        """Axioms of the derivation steps (leaves excluded), one per distinct node."""
        return [n.axiom for n in self.nodes() if n.axiom not in (AxiomTag.IN, AxiomTag.SE)]


def extract_proof(store: RuleStore, rule_id: int) -> ProofTree:
    """Expand provenance of *rule_id* down to IN/SE leaves."""
    memo: dict[int, ProofTree] = {}
    active: set[int] = set()

    def build(rid: int) -> ProofTree:
        if rid in memo:
            return memo[rid]
        if rid in active:
            raise IntegrityError(f"cyclic provenance through rule {rid}")
        fd = store.get(rid)
        active.add(rid)
        children = tuple(build(p) for p in fd.provenance.parents)
        active.discard(rid)
        node = ProofTree(fd.determinant, fd.dependent, fd.provenance.axiom, children, rid)
        memo[rid] = node
        return node

    return build(rule_id)


def explain_proof(
    tree: ProofTree,
    initial: Iterable,
    universe: Universe | Iterable[str],
    target=None,
    *,
    strict_decomposition: bool = True,
) -> str | None:
    """Return ``None`` if *tree* is a valid proof, else a located reason.

    With *target*, the root must also conclude exactly that FD.
    """
    if not isinstance(universe, Universe):
        universe = Universe(universe)
    attrs = set(universe.attrs)
    initial_set = {(canonical_attrset(l), canonical_attrset(r)) for l, r in initial}
    memo: dict[int, str | None] = {}

    if target is not None:
        t = (canonical_attrset(target[0]), canonical_attrset(target[1]))
        if tree.conclusion != t:
            return f"root: concludes {_fd(tree)}, expected {t[0]} -> {t[1]}"

    def check(node: ProofTree, path: str) -> str | None:
        key = id(node)
        if key in memo:
            return memo[key]
        reason = None
        if node.axiom is AxiomTag.IN:
            if node.children:
                reason = "initial rule with premises"
            elif node.conclusion not in initial_set:
                reason = f"{_fd(node)} is not an initial rule"
        elif node.axiom is AxiomTag.SE:
            if node.children:
                reason = "self-determination with premises"
            elif not (len(node.determinant) == 1 and node.determinant == node.dependent
                      and node.determinant.names[0] in attrs):
                reason = f"{_fd(node)} is not an identity over the universe"
        elif len(node.children) != node.axiom.arity:
            reason = (f"{node.axiom.title} needs {node.axiom.arity} premise(s), "
                      f"has {len(node.children)}")
        else:
            for i, child in enumerate(node.children):
                reason = check(child, f"{path}/{i}")
                if reason:
                    memo[key] = reason
                    return reason
            ok = check_step(node.axiom, [c.conclusion for c in node.children],
                            node.determinant, node.dependent, universe,
                            strict_decomposition=strict_decomposition)
            if not ok:
                reason = f"{node.axiom.title} does not yield {_fd(node)}"
        if reason and not reason.startswith(path):
            reason = f"{path}: {reason}"
        memo[key] = reason
        return reason

    return check(tree, "root")


def validate_proof(tree: ProofTree, initial: Iterable, universe, target=None, **kw) -> bool:
    return explain_proof(tree, initial, universe, target, **kw) is None


def _fd(node: ProofTree) -> str:
    return f"{node.determinant} -> {node.dependent}"


def _single_char(names: Iterable[str]) -> bool:
    return all(len(n) == 1 for n in names)


def format_attrs(s: AttrSet, concat: bool | None = None) -> str:
    """``ABC`` for single-letter names, ``Ab Cd`` otherwise."""
    if concat is None:
        concat = _single_char(s.names)
    return ("" if concat else " ").join(s.names)


def _concat_mode(tree: ProofTree, universe) -> bool:
    if universe is not None:
        names = universe.attrs.names if isinstance(universe, Universe) else canonical_attrset(universe).names
    else:
        names = [a for n in tree.nodes() for a in n.determinant.names + n.dependent.names]
    return _single_char(names)


def _paper(tree: ProofTree, concat: bool) -> str:
    memo: dict[int, str] = {}

    def fd(n):
        return f"{format_attrs(n.determinant, concat)}-->{format_attrs(n.dependent, concat)}"

    def go(n):
        s = memo.get(id(n))
        if s is None:
            if n.is_leaf:
                s = fd(n)
            else:
                inner = ",".join(go(c) for c in n.children)
                s = f"{{{inner}({n.axiom.title}) => {fd(n)}}}"
            memo[id(n)] = s
        return s

    return go(tree)


def proof_steps(tree: ProofTree) -> list[tuple[int, ProofTree, tuple[int, ...]]]:
    """Number distinct steps in post-order; returns ``(k, node, parent_step_numbers)``."""
    numbers: dict[tuple, int] = {}
    by_node: dict[int, int] = {}
    out = []
    for node in tree.nodes():
        parents = tuple(by_node[id(c)] for c in node.children)
        key = (node.determinant, node.dependent, node.axiom, parents)
        k = numbers.get(key)
        if k is None:
            k = len(out) + 1
            numbers[key] = k
            out.append((k, node, parents))
        by_node[id(node)] = k
    return out


def _steps(tree: ProofTree, concat: bool) -> str:
    lines = []
    for k, node, parents in proof_steps(tree):
        if node.axiom is AxiomTag.IN:
            label = "initial"
        elif node.axiom is AxiomTag.SE:
            label = node.axiom.title
        else:
            label = f"{node.axiom.title} from {', '.join(map(str, parents))}"
        lhs = format_attrs(node.determinant, concat)
        rhs = format_attrs(node.dependent, concat)
        lines.append(f"{k}. {lhs} -> {rhs}   [{label}]")
    return "\n".join(lines)


def _graph(tree: ProofTree, concat: bool) -> str:
    ids: dict[tuple, str] = {}
    lines = ["digraph proof {", "  rankdir=BT;"]
    edges: list[str] = []
    seen_edges: set[tuple[str, str, str]] = set()

    def node_id(n):
        key = n.conclusion
        if key not in ids:
            ids[key] = f"n{len(ids) + 1}"
            label = f"{format_attrs(n.determinant, concat)}-->{format_attrs(n.dependent, concat)}"
            shape = "box" if n.is_leaf else "ellipse"
            lines.append(f'  {ids[key]} [label="{label}", shape={shape}];')
        return ids[key]

    for n in tree.nodes():
        me = node_id(n)
        for c in n.children:
            e = (node_id(c), me, n.axiom.title)
            if e not in seen_edges:
                seen_edges.add(e)
                edges.append(f'  {e[0]} -> {e[1]} [label="{e[2]}"];')
    return "\n".join(lines + edges + ["}"])


def _json(tree: ProofTree) -> str:
    steps = proof_steps(tree)
    use_source = all(n.source_id is not None for _, n, _ in steps)
    out = []
    for k, node, parents in steps:
        if use_source:
            rid = node.source_id
            pids = [c.source_id for c in node.children]
        else:
            rid, pids = k, list(parents)
        out.append({
            "id": rid,
            "lhs": list(node.determinant.names),
            "rhs": list(node.dependent.names),
            "axiom": node.axiom.value,
            "parents": pids,
        })
    return json.dumps(out, indent=2)


def render(tree: ProofTree, format: str = "paper", universe=None) -> str:
    """Render *tree*; attribute names are concatenated when every name is one character."""
    concat = _concat_mode(tree, universe)
    if format == "paper":
        return _paper(tree, concat)
    if format == "steps":
        return _steps(tree, concat)
    if format == "graph":
        return _graph(tree, concat)
    if format == "json":
        return _json(tree)
    raise ValidationError(f"unknown proof format {format!r}; expected one of {FORMATS}")


class ProofSyntaxError(ValidationError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at offset {pos}")
        self.pos = pos


_AXIOM_NAMES = sorted((t.title for t in AxiomTag), key=len, reverse=True)
_WS = re.compile(r"\s*")


class _PaperParser:
    def __init__(self, text: str, concat: bool):
        self.text = text
        self.pos = 0
        self.concat = concat

    def skip(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            raise ProofSyntaxError(f"expected {s!r}", self.pos)
        self.pos += len(s)

    def proof(self) -> ProofTree:
        if not self.peek("{"):
            lhs, rhs = self.fdtext()
            return ProofTree(lhs, rhs, AxiomTag.IN)
        self.expect("{")
        children = [self.proof()]
        while self.peek(","):
            self.expect(",")
            children.append(self.proof())
        self.expect("(")
        axiom = self.axiom_name()
        self.expect(")")
        self.expect("=>")
        lhs, rhs = self.fdtext()
        self.expect("}")
        return ProofTree(lhs, rhs, axiom, tuple(children))

    def axiom_name(self) -> AxiomTag:
        self.skip()
        for name in _AXIOM_NAMES:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return AxiomTag.from_title(name)
        raise ProofSyntaxError("expected an axiom name", self.pos)

    def fdtext(self) -> tuple[AttrSet, AttrSet]:
        self.skip()
        start = self.pos
        m = re.compile(r"([^{}(),]*?)-->([^{}(),]*)").match(self.text, self.pos)
        if not m:
            raise ProofSyntaxError("expected LHS-->RHS", start)
        self.pos = m.end()
        return self.attrs(m.group(1), start), self.attrs(m.group(2), m.start(2))

    def attrs(self, raw: str, pos: int) -> AttrSet:
        raw = raw.strip()
        names = list(raw) if self.concat else raw.split()
        if not names:
            raise ProofSyntaxError("empty attribute list", pos)
        try:
            return canonical_attrset(names)
        except ValidationError as exc:
            raise ProofSyntaxError(str(exc), pos) from None


def parse_paper_proof(text: str, universe=None, initial: Iterable | None = None) -> ProofTree:
    """Parse the ``paper`` rendering back into a tree.

    Leaves come back as IN, except that an identity ``a-->a`` which is not
    among *initial* becomes SE.  *universe* decides whether attribute lists
    are split per character; without it, whitespace inside any list selects
    whitespace splitting.
    """
    if universe is not None:
        names = universe.attrs.names if isinstance(universe, Universe) else canonical_attrset(universe).names
        concat = _single_char(names)
    else:
        bare = re.sub("|".join(map(re.escape, _AXIOM_NAMES)), "", text)
        concat = not re.search(r"[A-Za-z0-9_]\s+[A-Za-z0-9_]", bare)
    p = _PaperParser(text, concat)
    tree = p.proof()
    p.skip()
    if p.pos != len(text):
        raise ProofSyntaxError("trailing text", p.pos)
    initial_set = None
    if initial is not None:
        initial_set = {(canonical_attrset(l), canonical_attrset(r)) for l, r in initial}
    return _retag_leaves(tree, initial_set)


def _retag_leaves(tree: ProofTree, initial_set) -> ProofTree:
    if tree.is_leaf:
        identity = len(tree.determinant) == 1 and tree.determinant == tree.dependent
        if identity and (initial_set is None or tree.conclusion not in initial_set):
            return ProofTree(tree.determinant, tree.dependent, AxiomTag.SE)
        return tree
    kids = tuple(_retag_leaves(c, initial_set) for c in tree.children)
    return ProofTree(tree.determinant, tree.dependent, tree.axiom, kids)


@dataclass
class ProveOutcome:
    result: SaturationResult
    tree: ProofTree | None

    @property
    def derivable(self) -> bool:
        return self.tree is not None

    @property
    def status(self) -> Status:
        return self.result.status


def prove(initial, universe, target, config: SaturationConfig | None = None) -> ProveOutcome:
    """Saturate until *target* appears (early exit on) and extract its proof."""
    config = config or SaturationConfig()
    if config.early_exit is None:
        config = replace(config, early_exit=True)
    result = saturate(initial, universe, config, target=target)
    tree = extract_proof(result.store, result.target_id) if result.target_id else None
    return ProveOutcome(result, tree)
