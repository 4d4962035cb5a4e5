"""Line-oriented rules files and FD expressions.

::

    # comment
    attributes: A B C D E F
    1: A -> B C
    2: B -> E
    C D -> E F

Labels are optional but, when given, must equal the rule's position.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import AttrSet, Universe, ValidationError, canonical_attrset, check_attribute

__all__ = [
    "ParseError",
    "RulesDocument",
    "parse_rules_file",
    "parse_fd_expr",
    "parse_attrs",
    "format_rules_file",
    "case_study",
    "CASE_STUDY",
    "CASE_STUDY_TARGET",
]

CASE_STUDY = """\
# three initial FDs over a six-attribute relation
attributes: A B C D E F
1: A -> B C
2: B -> E
3: C D -> E F
"""

CASE_STUDY_TARGET = "A D -> F"


class ParseError(ValidationError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.column = column


@dataclass
class RulesDocument:
    universe: Universe
    rules: list[tuple[int | None, AttrSet, AttrSet]] = field(default_factory=list)

    @property
    def initial(self) -> list[tuple[AttrSet, AttrSet]]:
        return [(l, r) for _, l, r in self.rules]


def _names(text: str, line: int | None, col0: int) -> list[str]:
    out = []
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        try:
            out.append(check_attribute(tok))
        except ValidationError:
            raise ParseError(f"invalid attribute name {tok!r}", line, col0 + pos + 1) from None
        pos += len(tok)
    return out


def parse_attrs(text: str) -> AttrSet:
    return canonical_attrset(_names(text, None, 0))


def parse_fd_expr(text: str, line: int | None = None, col0: int = 0) -> tuple[AttrSet, AttrSet]:
    """Parse ``"A D -> F"`` into ``({A,D}, {F})``."""
    if text.count("->") != 1:
        raise ParseError("expected exactly one '->'", line, col0 + 1 if line else None)
    arrow = text.index("->")
    lhs = _names(text[:arrow], line, col0)
    rhs = _names(text[arrow + 2:], line, col0 + arrow + 2)
    if not lhs:
        raise ParseError("empty determinant", line, col0 + 1 if line else None)
    if not rhs:
        raise ParseError("empty dependent", line, col0 + arrow + 3 if line else None)
    return canonical_attrset(lhs), canonical_attrset(rhs)


def parse_rules_file(text: str) -> RulesDocument:
    universe = None
    rules: list[tuple[int | None, AttrSet, AttrSet]] = []
    seen: dict[tuple[AttrSet, AttrSet], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if universe is None:
            head, sep, rest = body.partition(":")
            if not sep or head.strip() != "attributes":
                raise ParseError("first line must be 'attributes: <names>'", lineno, 1)
            names = _names(rest, lineno, len(head) + 1)
            if not names:
                raise ParseError("no attributes declared", lineno, len(body))
            if len(set(names)) != len(names):
                raise ParseError("attribute declared twice", lineno, 1)
            universe = Universe(names)
            continue

        label = None
        col0 = 0
        head, sep, rest = body.partition(":")
        if sep:
            try:
                label = int(head.strip())
            except ValueError:
                raise ParseError(f"bad rule label {head.strip()!r}", lineno, 1) from None
            if label != len(rules) + 1:
                raise ParseError(
                    f"label {label} does not match rule position {len(rules) + 1}", lineno, 1
                )
            body, col0 = rest, len(head) + 1
        lhs, rhs = parse_fd_expr(body, lineno, col0)
        for name in lhs.names + rhs.names:
            if name not in universe:
                col = raw.find(name) + 1 or None
                raise ParseError(f"undeclared attribute {name!r}", lineno, col)
        if (lhs, rhs) in seen:
            raise ParseError(f"duplicate of rule {seen[(lhs, rhs)]}", lineno, 1)
        seen[(lhs, rhs)] = len(rules) + 1
        rules.append((label, lhs, rhs))
    if universe is None:
        raise ParseError("missing 'attributes:' line")
    return RulesDocument(universe, rules)


def format_rules_file(universe: Universe, rules, comments=None) -> str:
    """Write rules back in file syntax; *comments* maps rule index to a trailing note."""
    lines = [f"attributes: {universe.attrs}"]
    for i, (lhs, rhs) in enumerate(rules, 1):
        line = f"{i}: {lhs} -> {rhs}"
        if comments and comments.get(i):
            line += f"   # {comments[i]}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def case_study() -> RulesDocument:
    return parse_rules_file(CASE_STUDY)
