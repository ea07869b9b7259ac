"""Command-line front end.

One verb per concept cluster:

    prefarg arguments  base.kb --query "p"      enumerate the universe
    prefarg extensions base.kb                  acceptance classes and extensions
    prefarg extensions graph.af --format json   same, from an abstract framework
    prefarg accept     base.kb --query "p"      verdict for one conclusion
    prefarg coherence  base.kb                  subbases and correspondence report
    prefarg graph      base.kb --query "p"      DOT attack graph
    prefarg check      graph.af                 run the invariant suite

Input kind is inferred from the file suffix (.kb or .af) unless --kind
says otherwise. Abstract framework files carry their own defeat and
preference relations, so --defeat, --pref and --query are rejected for
them. Exit codes: 0 success, 1 usage or parse error, 2 enumeration cap
exceeded, 3 invariant failure from the check subcommand.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arguments import DEFAULT_CAP, ArgumentUniverse, build_universe, universe_to_json
from .coherence import (
    check_correspondence,
    correspondence_to_json,
    incl_subbases,
    intersection_incl,
    subbase_to_json,
)
from .errors import AFFormatError, CapExceededError, FormulaSyntaxError, KBFormatError
from .formulas import parse_formula, render
from .framework import Framework, PreferenceRelation, build_framework, parse_abstract_framework
from .kb import StratifiedKB, parse_kb
from .semantics import (
    class_cr,
    class_cr_pref,
    evaluate,
    report_to_json,
    self_check,
)


class _Parser(argparse.ArgumentParser):
    """argparse with the documented exit code for usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="prefarg", description=__doc__.split("\n", 1)[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("arguments", "enumerate the argument universe of a knowledge base"),
        ("extensions", "compute acceptance classes and extensions"),
        ("accept", "decide whether a query conclusion is accepted"),
        ("coherence", "enumerate preferred subbases and cross-check extensions"),
        ("graph", "emit the attack graph in DOT format"),
        ("check", "run the semantic invariant suite on the input"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="path to a .kb or .af file")
        p.add_argument("--kind", choices=("kb", "af"), help="override the inferred input kind")
        p.add_argument("--defeat", choices=("rebut", "undercut"), default=None,
                       help="defeat relation for knowledge bases (default undercut)")
        p.add_argument("--pref", choices=("certainty", "none"), default=None,
                       help="preference for knowledge bases (default certainty)")
        p.add_argument("--mode", choices=("weak", "strict"), default="weak",
                       help="conflict-free test: attack edges or all defeat edges")
        p.add_argument("--query", default=None, metavar="FORMULA",
                       help="query conclusion (knowledge bases only)")
        p.add_argument("--format", choices=("text", "json", "dot"), default="text",
                       dest="fmt", help="output format")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="enumeration cap on arguments and beliefs")
        p.add_argument("--semantics", choices=("grounded", "complete", "stable", "all"),
                       default="all", help="which extension families to report")
    return parser


def _load(args) -> tuple[StratifiedKB | None, Framework | None]:
    """Parse the input file into a knowledge base or an abstract framework."""
    kind = args.kind
    if kind is None:
        suffix = Path(args.input).suffix
        if suffix == ".kb":
            kind = "kb"
        elif suffix == ".af":
            kind = "af"
        else:
            raise SystemExit(_usage(args, f"cannot infer input kind from {suffix!r}, pass --kind"))
    text = Path(args.input).read_text(encoding="utf-8")
    if kind == "kb":
        return parse_kb(text), None
    for flag in ("defeat", "pref", "query"):
        if getattr(args, flag) is not None:
            raise SystemExit(_usage(args, f"--{flag} does not apply to abstract framework input"))
    return None, parse_abstract_framework(text)


def _usage(args, message: str) -> int:
    sys.stderr.write(f"prefarg {args.command}: error: {message}\n")
    return 1


def _query_formula(args):
    if args.query is None:
        return None
    return parse_formula(args.query)


def _kb_framework(args, kb: StratifiedKB) -> tuple[ArgumentUniverse, Framework]:
    universe = build_universe(kb, _query_formula(args), args.cap)
    defeat = args.defeat or "undercut"
    pref = PreferenceRelation.none() if args.pref == "none" else None
    return universe, build_framework(universe, defeat, pref)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _ids(ids) -> str:
    return "{" + ", ".join(ids) + "}"


def _reject_dot(args) -> None:
    if args.fmt == "dot":
        raise SystemExit(_usage(args, "--format dot only applies to the graph subcommand"))


def cmd_arguments(args) -> int:
    _reject_dot(args)
    kb, fw = _load(args)
    if kb is None:
        return _usage(args, "the arguments subcommand needs a knowledge base")
    universe = build_universe(kb, _query_formula(args), args.cap)
    if args.fmt == "json":
        _emit(_dumps(universe_to_json(universe)))
    else:
        _emit("".join(a.describe() + "\n" for a in universe.arguments))
    return 0


def _extension_payload(args, report) -> dict:
    payload = report_to_json(report)
    if args.semantics == "all":
        return payload
    keep = ["mode", "capped", "iterations", "class_r", "class_r_pref"]
    keep += {
        "grounded": ["grounded", "greatest_fixed_point"],
        "complete": ["complete", "unique_complete"],
        "stable": ["stable"],
    }[args.semantics]
    return {k: payload[k] for k in payload if k in keep}


def _extension_text(args, report) -> str:
    lines = [f"mode: {report.mode}", f"capped: {'yes' if report.capped else 'no'}"]
    lines.append(f"class_r: {_ids(report.class_r)}")
    lines.append(f"class_r_pref: {_ids(report.class_r_pref)}")
    sel = args.semantics
    if sel in ("grounded", "all"):
        lines.append(f"grounded: {_ids(report.grounded)} ({report.iterations} iterations)")
        lines.append(f"greatest_fixed_point: {_ids(report.greatest_fixed_point)}")
    if sel in ("complete", "all"):
        lines.append(f"complete ({len(report.complete)}):")
        lines += [f"  {_ids(e)}" for e in report.complete]
        lines.append(f"unique_complete: {'yes' if report.unique_complete else 'no'}")
    if sel in ("stable", "all"):
        lines.append(f"stable ({len(report.stable)}):")
        lines += [f"  {_ids(e)}" for e in report.stable]
    return "".join(line + "\n" for line in lines)


def cmd_extensions(args) -> int:
    _reject_dot(args)
    kb, fw = _load(args)
    if fw is None:
        _, fw = _kb_framework(args, kb)
    report = evaluate(fw, args.mode, args.cap)
    if args.fmt == "json":
        _emit(_dumps(_extension_payload(args, report)))
    else:
        _emit(_extension_text(args, report))
    return 0


def cmd_accept(args) -> int:
    _reject_dot(args)
    kb, fw = _load(args)
    if kb is None:
        return _usage(args, "the accept subcommand needs a knowledge base")
    if args.query is None:
        return _usage(args, "the accept subcommand needs --query")
    query = parse_formula(args.query)
    universe = build_universe(kb, query, args.cap)
    defeat = args.defeat or "undercut"
    pref = PreferenceRelation.none() if args.pref == "none" else None
    fw = build_framework(universe, defeat, pref)
    report = evaluate(fw, args.mode, args.cap)
    in_r = class_cr(fw)
    in_r_pref = class_cr_pref(fw)
    grounded = set(report.grounded)
    stable = [set(e) for e in report.stable]
    rows = []
    for a in universe.arguments:
        if a.conclusion != query:
            continue
        rows.append({
            "id": a.id,
            "argument": a.describe(),
            "in_class_r": a.id in in_r,
            "in_class_r_pref": a.id in in_r_pref,
            "in_grounded": a.id in grounded,
            "in_stable": [a.id in e for e in stable],
        })
    accepted = any(r["in_grounded"] for r in rows)
    credulous = None if report.capped else any(any(r["in_stable"]) for r in rows)
    if args.fmt == "json":
        _emit(_dumps({
            "query": render(query),
            "accepted": accepted,
            "credulous_stable": credulous,
            "capped": report.capped,
            "arguments": rows,
            "stable": [list(e) for e in report.stable],
        }))
    else:
        lines = [f"query: {render(query)}"]
        for r in rows:
            marks = ", ".join(
                name for name, hit in (
                    ("class_r", r["in_class_r"]),
                    ("class_r_pref", r["in_class_r_pref"]),
                    ("grounded", r["in_grounded"]),
                ) if hit
            ) or "none"
            stable_note = f"{sum(r['in_stable'])}/{len(stable)} stable"
            lines.append(f"{r['argument']}  [{marks}; {stable_note}]")
        if not rows:
            lines.append("no argument concludes the query")
        lines.append(f"verdict: {'accepted' if accepted else 'not accepted'}")
        _emit("".join(line + "\n" for line in lines))
    return 0


def cmd_coherence(args) -> int:
    _reject_dot(args)
    kb, fw = _load(args)
    if kb is None:
        return _usage(args, "the coherence subcommand needs a knowledge base")
    universe = build_universe(kb, _query_formula(args), args.cap)
    subbases = incl_subbases(kb, args.cap)
    common = intersection_incl(kb, args.cap)
    report = check_correspondence(kb, universe, args.cap)
    if args.fmt == "json":
        _emit(_dumps({
            "subbases": [subbase_to_json(kb, sb) for sb in subbases],
            "intersection": [
                {"stratum": r.stratum, "position": r.position,
                 "formula": render(kb.resolve(r))}
                for r in sorted(common)
            ],
            "correspondence": correspondence_to_json(report),
        }))
    else:
        lines = [f"subbases ({len(subbases)}):"]
        for sb in subbases:
            lines.append("  {" + ", ".join(render(f) for f in sb.formulas(kb)) + "}")
        lines.append(
            "intersection: {"
            + ", ".join(render(kb.resolve(r)) for r in sorted(common)) + "}"
        )
        for c in report.clauses:
            lines.append(f"{c.name}: {c.status}  {c.detail}")
            if c.counterexample:
                lines.append(f"  counterexample: {json.dumps(c.counterexample)}")
        _emit("".join(line + "\n" for line in lines))
    return 0


def cmd_graph(args) -> int:
    if args.fmt == "json":
        return _usage(args, "the graph subcommand writes DOT, use --format dot")
    kb, fw = _load(args)
    if fw is None:
        _, fw = _kb_framework(args, kb)
    attacks = set(fw.attacks)
    lines = ["digraph framework {", "  rankdir=LR;"]
    for a in fw.arguments:
        label = a.id if a.level is None else f"{a.id} @{a.level}"
        lines.append(f'  "{a.id}" [label="{label}"];')
    for x, y in fw.defeats:
        style = "" if (x, y) in attacks else " [style=dashed]"
        lines.append(f'  "{x}" -> "{y}"{style};')
    lines.append("}")
    _emit("".join(line + "\n" for line in lines))
    return 0


def cmd_check(args) -> int:
    _reject_dot(args)
    kb, fw = _load(args)
    universe = None
    if fw is None:
        universe, fw = _kb_framework(args, kb)
    report = self_check(fw, args.cap)
    clauses = None
    if kb is not None:
        clauses = check_correspondence(kb, universe, args.cap)
    ok = report.ok and (clauses is None or clauses.ok)
    if args.fmt == "json":
        payload = {
            "ok": ok,
            "results": [
                {"name": r.name, "status": r.status, "detail": r.detail}
                for r in report.results
            ],
            "fgf": {
                "checked": report.fgf_checked,
                "mismatches": report.fgf_mismatches,
                "f_fixed_point_mismatches": report.fgf_f_fixed_point_mismatches,
                "g_fixed_point_mismatches": report.fgf_g_fixed_point_mismatches,
            },
        }
        if clauses is not None:
            payload["correspondence"] = correspondence_to_json(clauses)
        _emit(_dumps(payload))
    else:
        lines = []
        for r in report.results:
            lines.append(f"{r.name}: {r.status}" + (f"  {r.detail}" if r.detail else ""))
        lines.append(
            f"interchange tally: {report.fgf_mismatches}/{report.fgf_checked} subsets, "
            f"{report.fgf_f_fixed_point_mismatches} at f_step fixed points, "
            f"{report.fgf_g_fixed_point_mismatches} at g_step fixed points"
        )
        if clauses is not None:
            for c in clauses.clauses:
                lines.append(f"{c.name}: {c.status}  {c.detail}")
        lines.append("self_check: " + ("ok" if ok else "FAILED"))
        _emit("".join(line + "\n" for line in lines))
    return 0 if ok else 3


_COMMANDS = {
    "arguments": cmd_arguments,
    "extensions": cmd_extensions,
    "accept": cmd_accept,
    "coherence": cmd_coherence,
    "graph": cmd_graph,
    "check": cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except (FormulaSyntaxError, KBFormatError, AFFormatError) as exc:
        sys.stderr.write(f"prefarg: error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"prefarg: error: {exc}\n")
        return 1
    except CapExceededError as exc:
        sys.stderr.write(f"prefarg: error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
