"""Command-line front end.

Exit codes: 0 success/derivable, 1 not derivable or invalid proof,
2 usage or parse error, 3 resource limit hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .core import FDError
from .dsl import format_rules_file, parse_attrs, parse_fd_expr, parse_rules_file
from .proof import FORMATS, explain_proof, parse_paper_proof, prove, render
from .saturation import SaturationConfig, SaturationResult, Status, saturate

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fdproof", description="Functional-dependency proofs by saturation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def limits(sp):
        sp.add_argument("--order", default="AU,GE,CO,UN,DE,TR",
                        help="generator order, a permutation of AU,GE,CO,UN,DE,TR")
        sp.add_argument("--max-rounds", type=int, default=32)
        sp.add_argument("--max-rules", type=int, default=200_000)
        sp.add_argument("--trace", action="store_true", help="report per-stage rule counts")

    sp = sub.add_parser("prove", help="derive a target FD and print its proof")
    sp.add_argument("--rules", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--format", choices=FORMATS, default="paper")
    sp.add_argument("--out", help="write the proof here instead of stdout")
    limits(sp)

    sp = sub.add_parser("closure", help="attribute closure of a set")
    sp.add_argument("--rules", required=True)
    sp.add_argument("--of", required=True)

    sp = sub.add_parser("saturate", help="run to fixpoint and list every rule")
    sp.add_argument("--rules", required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    limits(sp)

    sp = sub.add_parser("check-proof", help="validate a paper-format proof file")
    sp.add_argument("--rules", required=True)
    sp.add_argument("--proof", required=True)
    sp.add_argument("--target")
    return p


def _config(args) -> SaturationConfig:
    return SaturationConfig(generator_order=args.order, max_rounds=args.max_rounds,
                            max_rules=args.max_rules)


def _trace_lines(result: SaturationResult) -> list[str]:
    return [f"round {s.round} {s.generator.value} +{s.new_rules} ({s.total_rules} total)"
            for s in result.trace]


def _trace_json(result: SaturationResult) -> list[dict]:
    return [{"round": s.round, "generator": s.generator.value,
             "new_rules": s.new_rules, "total_rules": s.total_rules} for s in result.trace]


def _limit_message(result: SaturationResult) -> str:
    if result.status is Status.ROUND_LIMIT:
        return f"round limit reached after {result.rounds} rounds ({len(result.store)} rules)"
    return f"rule limit reached ({len(result.store)} rules)"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="latin-1")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_prove(args, out, err) -> int:
    doc = parse_rules_file(_read(args.rules))
    target = parse_fd_expr(args.target)
    outcome = prove(doc.initial, doc.universe, target, _config(args))
    if args.trace:
        for line in _trace_lines(outcome.result):
            print(line, file=err)
    if outcome.tree is None:
        if outcome.status in (Status.ROUND_LIMIT, Status.RULE_LIMIT):
            print(f"undecided: {_limit_message(outcome.result)}", file=err)
            return EXIT_LIMIT
        print(f"not derivable: {target[0]} -> {target[1]}", file=out)
        return EXIT_NO
    text = render(outcome.tree, args.format, doc.universe) + "\n"
    if args.out:
        Path(args.out).write_bytes(text.encode("latin-1"))
    else:
        out.write(text)
    return EXIT_OK


def cmd_closure(args, out, err) -> int:
    doc = parse_rules_file(_read(args.rules))
    x = parse_attrs(args.of)
    if not x:
        raise UsageError("--of needs at least one attribute")
    for name in x:
        if name not in doc.universe:
            raise UsageError(f"attribute {name!r} is not declared")
    print(oracle.attribute_closure(doc.initial, x), file=out)
    return EXIT_OK


def cmd_saturate(args, out, err) -> int:
    doc = parse_rules_file(_read(args.rules))
    result = saturate(doc.initial, doc.universe, _config(args))
    store = result.store
    if args.format == "json":
        payload = {
            "status": result.status.value,
            "rounds": result.rounds,
            "rules": [
                {"id": fd.id, "lhs": list(fd.determinant.names), "rhs": list(fd.dependent.names),
                 "axiom": fd.provenance.axiom.value, "parents": list(fd.provenance.parents)}
                for fd in store
            ],
        }
        if args.trace:
            payload["trace"] = _trace_json(result)
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"# status: {result.status.value} after {result.rounds} rounds, "
                  f"{len(store)} rules\n")
        if args.trace:
            for line in _trace_lines(result):
                out.write(f"# {line}\n")
        notes = {fd.id: " ".join([fd.provenance.axiom.value, *map(str, fd.provenance.parents)])
                 for fd in store}
        out.write(format_rules_file(store.universe, [fd.key for fd in store], notes))
    if result.status in (Status.ROUND_LIMIT, Status.RULE_LIMIT):
        print(_limit_message(result), file=err)
        return EXIT_LIMIT
    return EXIT_OK


def cmd_check_proof(args, out, err) -> int:
    doc = parse_rules_file(_read(args.rules))
    tree = parse_paper_proof(_read(args.proof), doc.universe, doc.initial)
    target = parse_fd_expr(args.target) if args.target else None
    reason = explain_proof(tree, doc.initial, doc.universe, target)
    if reason:
        print(f"invalid: {reason}", file=out)
        return EXIT_NO
    print(f"valid: {tree.determinant} -> {tree.dependent}", file=out)
    return EXIT_OK


COMMANDS = {
    "prove": cmd_prove,
    "closure": cmd_closure,
    "saturate": cmd_saturate,
    "check-proof": cmd_check_proof,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        print(f"fdproof: {exc}", file=err)
        return EXIT_USAGE
    except FDError as exc:
        print(f"fdproof: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
