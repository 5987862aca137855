"""Command-line front end: parse, validate, infer, query, cq, cases.

Exit codes: 0 success (conforms / golden match), 1 violations or golden
mismatch, 2 usage, I/O, or parse errors. All diagnostics go to stderr;
data output goes to stdout so subcommands compose in pipelines. "-" as a
path reads from stdin. Set ICON_NO_COLOR to disable ANSI styling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .casebook import UnknownCaseError, case_document, list_cases, load_case
from .query import (QueryError, UnknownQuestionError, cq_catalog, evaluate,
                    find_cq, load_golden, pattern_from_json, solutions_to_json)
from .reasoner import RuleSet, close
from .shapes import default_shapes, validate
from .turtle_io import ParseError, parse_turtle, serialize_turtle
from .vocab import NAMESPACES, build_registry

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _color_enabled() -> bool:
    return os.environ.get("ICON_NO_COLOR") is None and sys.stdout.isatty()


def _style(text: str, code: str) -> str:
    if _color_enabled():
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _green(text: str) -> str:
    return _style(text, "32")


def _red(text: str) -> str:
    return _style(text, "31")


def _err(message: str):
    print(f"icon: {message}", file=sys.stderr)


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text("utf-8")


def _parse_source(path: str):
    """Parse a Turtle document or exit with status 2."""
    try:
        text = _read_source(path)
    except OSError as exc:
        _err(str(exc))
        raise SystemExit(EXIT_ERROR)
    try:
        return parse_turtle(text)
    except ParseError as exc:
        _err(f"{path}: line {exc.line}, col {exc.column}: {exc.message}")
        raise SystemExit(EXIT_ERROR)


def cmd_parse(args) -> int:
    result = _parse_source(args.path)
    print(f"{len(result.graph)} triples")
    for label in sorted(result.prefixes):
        print(f"@prefix {label}: <{result.prefixes[label]}>")
    return EXIT_OK


def cmd_validate(args) -> int:
    result = _parse_source(args.path)
    reg = build_registry()
    g = result.graph
    if not args.no_axioms:
        rules = RuleSet(hierarchy=True, shortcut_contraction=False,
                        domain_range_typing=False)
        g = close(g, reg, rules).graph()
    report = validate(g, default_shapes(reg), reg)
    if args.json:
        print(report.to_json())
    else:
        _print_report(report)
    return EXIT_OK if report.conforms else EXIT_FAIL


def _print_report(report):
    from .graph import BlankNode, Literal

    def focus_str(t):
        if isinstance(t, BlankNode):
            return f"_:{t.label}"
        if isinstance(t, Literal):
            return t.lexical
        return t.value

    for e in report.entries:
        tag = e.severity.value.upper()
        if e.severity.value == "violation":
            tag = _red(tag)
        print(f"{tag} [{e.shape_id}] {focus_str(e.focus)}: {e.message}")
    verdict = _green("conforms") if report.conforms else _red("does not conform")
    print(verdict)


_RULE_NAMES = {"hierarchy": "hierarchy", "shortcuts": "shortcut_contraction",
               "domainrange": "domain_range_typing"}


def cmd_infer(args) -> int:
    result = _parse_source(args.path)
    names = [n for n in args.rules.split(",") if n]
    if not names:
        _err("no rules selected")
        return EXIT_ERROR
    rules = RuleSet(hierarchy=False, shortcut_contraction=False,
                    domain_range_typing=False)
    for name in names:
        field = _RULE_NAMES.get(name)
        if field is None:
            _err(f"unknown rule name {name!r} "
                 f"(expected one of: {', '.join(sorted(_RULE_NAMES))})")
            return EXIT_ERROR
        setattr(rules, field, True)
    closure = close(result.graph, build_registry(), rules)
    if args.emit == "base":
        out = closure.base
    elif args.emit == "inferred":
        out = closure.inferred
    else:
        out = closure.graph()
    prefixes = dict(NAMESPACES)
    prefixes.update(result.prefixes)
    sys.stdout.write(serialize_turtle(out, prefixes))
    return EXIT_OK


def cmd_query(args) -> int:
    result = _parse_source(args.graph)
    try:
        doc = json.loads(_read_source(args.pattern))
    except OSError as exc:
        _err(str(exc))
        return EXIT_ERROR
    except json.JSONDecodeError as exc:
        _err(f"{args.pattern}: bad JSON: {exc}")
        return EXIT_ERROR
    try:
        pattern, projection = pattern_from_json(doc, result.prefixes)
    except QueryError as exc:
        _err(str(exc))
        return EXIT_ERROR
    g = result.graph
    if args.infer:
        g = close(g, build_registry()).graph()
    try:
        solutions = evaluate(g, pattern, projection)
    except QueryError as exc:
        _err(str(exc))
        return EXIT_ERROR
    print(json.dumps(solutions_to_json(solutions), indent=2))
    return EXIT_OK


def _case_closure(case_id: str):
    g, _meta = load_case(case_id)
    return close(g, build_registry())


def _run_one_cq(cq_id: str, closures: dict) -> bool:
    cq = find_cq(cq_id)
    if cq.case_id not in closures:
        closures[cq.case_id] = _case_closure(cq.case_id)
    closure = closures[cq.case_id]
    solutions = evaluate(closure.graph(), cq.pattern, cq.projection)
    golden = load_golden(cq.case_id).get(cq.id, set())
    ok = solutions == golden
    print(f"{cq.id} ({cq.case_id}): {cq.prose}")
    for row in solutions_to_json(solutions):
        parts = [f"{k} = {json.dumps(v) if isinstance(v, dict) else v}"
                 for k, v in sorted(row.items())]
        print("  " + "  ".join(parts))
    if not solutions:
        print("  (no solutions)")
    print("  " + (_green("GOLDEN MATCH") if ok else _red("GOLDEN MISMATCH")))
    return ok


def cmd_cq(args) -> int:
    if args.action == "list":
        for cq in cq_catalog():
            print(f"{cq.id} ({cq.case_id}): {cq.prose}")
        return EXIT_OK
    closures: dict = {}
    if args.action == "run":
        if not args.id:
            _err("cq run needs a question id")
            return EXIT_ERROR
        try:
            ok = _run_one_cq(args.id, closures)
        except UnknownQuestionError as exc:
            _err(str(exc))
            return EXIT_ERROR
        return EXIT_OK if ok else EXIT_FAIL
    # run-all
    questions = cq_catalog()
    if args.case:
        questions = [cq for cq in questions if cq.case_id == args.case]
        if not questions:
            _err(f"no questions for case {args.case!r}")
            return EXIT_ERROR
    all_ok = True
    for cq in questions:
        all_ok &= _run_one_cq(cq.id, closures)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_cases(args) -> int:
    if args.action == "list":
        for case in list_cases():
            print(f"{case.id}  typology {case.typology}  {case.title}")
        return EXIT_OK
    # export
    if args.id is None and args.out is None:
        _err("cases export needs a case id or --out DIR")
        return EXIT_ERROR
    try:
        if args.out is not None:
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            targets = [args.id] if args.id else [c.id for c in list_cases()]
            for case_id in targets:
                (out_dir / f"{case_id}.ttl").write_text(case_document(case_id),
                                                        "utf-8")
                print(f"wrote {out_dir / (case_id + '.ttl')}", file=sys.stderr)
        else:
            sys.stdout.write(case_document(args.id))
    except UnknownCaseError as exc:
        _err(str(exc))
        return EXIT_ERROR
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icon",
        description="Work with iconographic interpretation graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a Turtle document")
    p.add_argument("path", help='input file, or "-" for stdin')
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("validate", help="validate against the built-in shapes")
    p.add_argument("path")
    p.add_argument("--no-axioms", action="store_true",
                   help="validate the raw graph without hierarchy closure")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("infer", help="materialize entailments")
    p.add_argument("path")
    p.add_argument("--rules", default="hierarchy,shortcuts",
                   help="comma-separated: hierarchy, shortcuts, domainrange")
    p.add_argument("--emit", choices=["base", "inferred", "all"], default="all")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("query", help="run a JSON pattern over a graph")
    p.add_argument("graph", help="Turtle document")
    p.add_argument("pattern", help="JSON pattern file")
    p.add_argument("--infer", action="store_true",
                   help="query the closure instead of the asserted graph")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("cq", help="competency questions")
    p.add_argument("action", choices=["list", "run", "run-all"])
    p.add_argument("id", nargs="?", help="question id for run")
    p.add_argument("--case", help="restrict run-all to one case")
    p.set_defaults(func=cmd_cq)

    p = sub.add_parser("cases", help="shipped case studies")
    p.add_argument("action", choices=["list", "export"])
    p.add_argument("id", nargs="?", help="case id for export")
    p.add_argument("--out", help="directory to write exported fixtures to")
    p.set_defaults(func=cmd_cases)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors already; normalize --help to 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
