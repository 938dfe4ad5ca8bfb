from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import axioms, lambdai, logic, reproduce
from .classify import (
    DEFAULT_CLASSIFY_DEPTH,
    Unknown,
    Unsolvable,
    classify,
    describe,
    evidence_to_json,
    is_root_active,
    replay,
    verdict_to_json,
)
from .errors import UnknownCellError, WorkbenchError
from .props import (
    compile_prop,
    direct_eval,
    eval_prop,
    format_prop,
    parse_prop,
    render_russell,
    russell_demo,
)
from .reduce import (
    DEFAULT_FUEL,
    FuelExhausted,
    describe_outcome,
    head_reduce,
    normalize,
    outcome_to_json,
    render_trace,
    whnf_search,
)
from .syntax import format_term, parse_script, parse_term
from .terms import LIBRARY, DefEnv, Term, canonicalize
from .trees import DEFAULT_TREE_DEPTH, berarducci_tree, bohm_tree, levy_longo_tree, render_tree, tree_to_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

TREES = {"bohm": bohm_tree, "levy-longo": levy_longo_tree, "berarducci": berarducci_tree}

# Spellings accepted on the right of --assign x=VALUE.
VALUE_SPELLING: Dict[str, str] = {
    "T": "T", "F": "F",
    "Bot": "Bot", "_|_": "Bot", "⊥": "Bot",
    "HA": "HA", "_HA": "HA", "IL": "IL", "_IL": "IL",
    "O": "O", "_O": "O", "D": "D", "_D": "D",
}


class UsageError(WorkbenchError, ValueError):
    pass


# =========================
# Helpers
# =========================
def _emit(args: argparse.Namespace, text_lines: Sequence[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _load_term(args: argparse.Namespace) -> Tuple[Term, DefEnv]:
    """
    The positional term, or the query of the --file script. Script
    definitions are visible in both.
    """
    env = LIBRARY
    query: Optional[Term] = None
    if args.file:
        with open(args.file, "r", encoding="utf-8") as f:
            env, query = parse_script(f.read(), env)
    if args.term:
        return parse_term(args.term, env), env
    if query is None:
        raise UsageError("no term given (pass TERM or a --file script ending in a query)")
    return query, env


def parse_assignment(text: Optional[str]) -> Dict[str, str]:
    out: Dict[str, str] = {}
    if not text:
        return out
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or not name:
            raise UsageError(f"Bad assignment: {part!r} (expected name=VALUE)")
        if value not in VALUE_SPELLING:
            raise UsageError(f"Bad truth value in assignment: {value!r}")
        out[name] = VALUE_SPELLING[value]
    return out


# =========================
# Commands
# =========================
def cmd_parse(args: argparse.Namespace) -> int:
    t, env = _load_term(args)
    text = format_term(t, unicode=args.unicode)
    free = sorted(t.free)
    digest = canonicalize(t, env).digest.hex()
    lines = [text, f"free: {', '.join(free) or '-'}", f"size: {t.size}", f"nameless digest: {digest}"]
    _emit(args, lines, {"term": format_term(t), "free": free, "size": t.size, "digest": digest})
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    t, env = _load_term(args)
    if args.strategy == "head":
        out = head_reduce(t, args.fuel, env, trace=args.trace)
    elif args.strategy == "whnf":
        out = whnf_search(t, args.fuel, env, trace=args.trace)
    else:
        out = normalize(t, args.fuel, env, args.strategy, trace=args.trace)
    lines = render_trace(out.trace, args.unicode).splitlines() if args.trace else []
    lines.append(describe_outcome(out, args.unicode))
    _emit(args, lines, {"strategy": args.strategy, **outcome_to_json(out)})
    return EXIT_UNKNOWN if isinstance(out, FuelExhausted) else EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    t, env = _load_term(args)
    if args.root_active:
        rv = is_root_active(t, args.fuel, env)
        _emit(args, [describe(rv)], verdict_to_json(rv))
        return EXIT_UNKNOWN if isinstance(rv, Unknown) else EXIT_OK

    v = classify(t, args.fuel, args.depth, env)
    lines = [describe(v)]
    payload = verdict_to_json(v)
    if isinstance(v, Unsolvable):
        ev = evidence_to_json(v.evidence)
        ok = replay(v.evidence, env)
        payload["replayed"] = ok
        lines.append(f"  evidence: {ev['kind']}, loop {ev['loop_length']}, growth {ev['growth']}, floor {ev['floor']}")
        lines.append(f"  witness:  {format_term(v.evidence.witness, unicode=args.unicode)}")
        if v.evidence.binders:
            lines.append(f"  under:    {' '.join(v.evidence.binders)}")
        lines.append(f"  replayed: {'ok' if ok else 'FAILED'}")
    _emit(args, lines, payload)
    return EXIT_UNKNOWN if isinstance(v, Unknown) else EXIT_OK


def cmd_tree(args: argparse.Namespace) -> int:
    t, env = _load_term(args)
    tree = TREES[args.command](t, args.depth, args.fuel, env)
    _emit(args, [render_tree(tree, args.unicode)], {"tree": args.command, "root": tree_to_json(tree)})
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    conn, arity = args.connective, args.arity
    notes: List[str] = []
    ok = True
    if args.style == "lambda-i" and (conn, arity) in logic.REFERENCE_TABLES:
        chk = lambdai.check_truth_table_i(conn, arity, args.fuel)
        table, ok = chk.table, chk.ok
        for mm in chk.documented:
            notes.append(f"λI deviation at {logic.cell_label(mm.cell)}: {logic.LABELS[mm.computed]} (published {logic.LABELS[mm.printed]})")
        for mm in chk.undocumented:
            notes.append(f"MISMATCH at {logic.cell_label(mm.cell)}: computed {logic.LABELS[mm.computed]}, expected {logic.LABELS[mm.expected]}")
    elif args.style == "lambda-i":
        table = lambdai.truth_table_i(conn, arity, args.fuel)
    else:
        table = logic.truth_table(conn, arity, args.style, args.fuel)
        if (conn, arity) in logic.REFERENCE_TABLES:
            for mm in logic.compare_to_reference(table):
                ok = False
                notes.append(f"MISMATCH at {logic.cell_label(mm.cell)}: computed {logic.LABELS[mm.computed]}, expected {logic.LABELS[mm.expected]}")
            for c, a, cell in logic.FLAGGED_CELLS:
                if (c, a) == (conn, arity):
                    printed = logic.reference_cells(c, a)[cell]
                    notes.append(f"flagged cell {logic.cell_label(cell)}: printed {logic.LABELS[printed]}, computed {logic.LABELS[table.cells[cell]]}")
            if ok:
                notes.append("matches the published table")
        elif conn == "impl":
            bad = logic.check_implication(arity, args.style, args.fuel)
            ok = not bad
            notes.append("agrees with ~x \\/ y" if ok else f"MISMATCH with ~x \\/ y at {', '.join(logic.cell_label(c) for c in bad)}")
    payload = logic.table_to_json(table)
    payload["ok"] = ok
    payload["notes"] = notes
    _emit(args, logic.render_table(table, args.unicode).splitlines() + notes, payload)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_axioms(args: argparse.Namespace) -> int:
    if args.equation:
        eq = axioms.find_equation(args.equation)
        if eq is None:
            raise UsageError(f"Unknown axiom: {args.equation!r}")
        outcome = axioms.check_equation(eq, args.arity, args.style, args.fuel)
        report = axioms.CheckReport(eq.name, args.style, (axioms.AxiomResult(eq, args.arity, outcome),))
        reports = [report]
    else:
        reports = []
        if args.suite in ("gs", "all"):
            reports.append(axioms.guzman_squier_suite(args.style, args.fuel))
        if args.suite in ("bvdp", "all"):
            reports.append(axioms.bergstra_vdpol_suite(args.style, args.fuel))
    lines: List[str] = []
    for r in reports:
        lines.extend(axioms.render_report(r))
        lines.append("")
    _emit(args, lines[:-1], {"reports": [axioms.report_to_json(r) for r in reports]})
    if args.equation:
        return EXIT_OK
    return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH


def cmd_prop(args: argparse.Namespace) -> int:
    p, env = parse_prop(args.text)
    asg = parse_assignment(args.assign)
    if args.action == "parse":
        text = format_prop(p, env)
        _emit(args, [text], {"prop": text})
        return EXIT_OK
    if args.action == "compile":
        t = compile_prop(p, env, asg, args.style)
        _emit(args, [format_term(t, unicode=args.unicode)], {"term": format_term(t)})
        return EXIT_OK
    if args.action == "direct":
        v = direct_eval(p, env, asg)
        _emit(args, [logic.value_label(v.value, args.unicode)], {"arity": 3, "value": v.value})
        return EXIT_OK
    out = eval_prop(p, env, asg, args.arity, args.style, args.fuel)
    if isinstance(out, Unknown):
        _emit(args, [describe(out)], verdict_to_json(out))
        return EXIT_UNKNOWN
    _emit(args, [logic.value_label(out.value, args.unicode)], {"arity": out.arity, "value": out.value})
    return EXIT_OK


def cmd_lambdai(args: argparse.Namespace) -> int:
    if args.action == "ite":
        rows = lambdai.check_lambda_i_ite(args.fuel)
        lines = [f"M={r.then_arg:<4} N={r.else_arg:<4} {'ok' if r.ok else 'FAIL'}" for r in rows]
        _emit(args, lines, {"rows": [{"m": r.then_arg, "n": r.else_arg, "ok": r.ok} for r in rows]})
        return EXIT_OK if all(r.ok for r in rows) else EXIT_MISMATCH
    if args.action == "table":
        if not args.operand:
            raise UsageError("lambdai table needs a connective")
        ns = argparse.Namespace(**{**vars(args), "connective": args.operand, "style": "lambda-i"})
        return cmd_table(ns)

    ns = argparse.Namespace(**{**vars(args), "term": args.operand})
    t, env = _load_term(ns)
    if args.action == "check":
        bad = lambdai.validate_lambda_i(t, env)
        lines = ["λI-term" if not bad else "not a λI-term"]
        lines.extend(f"  \\{v.binder} at {v.path or 'root'} does not use its variable" for v in bad)
        _emit(args, lines, {"lambda_i": not bad, "violations": [{"path": v.path, "binder": v.binder} for v in bad]})
        return EXIT_OK
    out = lambdai.bot_normalize_i(t, args.fuel, args.depth, env, require_lambda_i=not args.allow_non_i)
    if isinstance(out, Unknown):
        _emit(args, [describe(out)], verdict_to_json(out))
        return EXIT_UNKNOWN
    _emit(args, [format_term(out, unicode=args.unicode)], {"term": format_term(out)})
    return EXIT_OK


def cmd_russell(args: argparse.Namespace) -> int:
    report = russell_demo(args.steps, args.fuel)
    value = report.value.value if isinstance(report.value, logic.TruthValue) else None
    payload = {
        "term": format_term(report.term),
        "trace": [format_term(st.term) for st in report.trace],
        "verdict": verdict_to_json(report.verdict),
        "tree": tree_to_json(report.tree),
        "value": value,
    }
    _emit(args, render_russell(report, args.unicode), payload)
    return EXIT_OK if value == "Bot" else EXIT_UNKNOWN


def cmd_reproduce(args: argparse.Namespace) -> int:
    report = reproduce.run_all(args.fuel)
    if args.json:
        print(json.dumps(reproduce.report_to_json(report), indent=2, ensure_ascii=False))
    else:
        sys.stdout.write(reproduce.render(report))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_zoo(args: argparse.Namespace) -> int:
    rows = reproduce.run_zoo(min(args.fuel, reproduce.ZOO_FUEL))
    header = f"{'term':<18}{'expected':<10}{'verdict':<40}ok"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(f"{r.label:<18}{r.expected:<10}{describe(r.verdict):<40}{'ok' if r.ok else 'MISMATCH'}")
    payload = {
        "rows": [
            {"label": r.label, "term": format_term(r.term), "expected": r.expected,
             "verdict": verdict_to_json(r.verdict), "replayed": r.replayed, "ok": r.ok}
            for r in rows
        ]
    }
    _emit(args, lines, payload)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_MISMATCH


# =========================
# Parser
# =========================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="Step budget per question")
    common.add_argument("--json", action="store_true", help="Machine readable output")
    common.add_argument("--unicode", action="store_true", help="Print λ and ⊥ instead of \\ and _|_")
    common.add_argument("-v", "--verbose", action="store_true")

    term_opts = argparse.ArgumentParser(add_help=False)
    term_opts.add_argument("term", nargs="?", help="Term in the ASCII syntax, e.g. '\\x. x x'")
    term_opts.add_argument("--file", help="Script of 'Name = term' lines, optionally ending in a query")

    logic_opts = argparse.ArgumentParser(add_help=False)
    logic_opts.add_argument("--arity", type=int, choices=list(logic.ARITIES), default=3)
    logic_opts.add_argument("--style", choices=list(logic.STYLES), default="church")

    ap = argparse.ArgumentParser(prog="mccarthy", description="λ-calculus workbench for left-sequential logic")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common, term_opts], help="Parse and pretty-print a term")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("reduce", parents=[common, term_opts], help="Reduce a term")
    p.add_argument("--strategy", choices=["normal", "innermost", "head", "whnf"], default="normal")
    p.add_argument("--trace", action="store_true", help="Print every step with the contracted redex in [ ]")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("classify", parents=[common, term_opts], help="Solvable, or unsolvable of class HA/IL/O")
    p.add_argument("--depth", type=int, default=DEFAULT_CLASSIFY_DEPTH, help="Max binders stripped")
    p.add_argument("--root-active", action="store_true", help="Decide root-activity instead")
    p.set_defaults(func=cmd_classify)

    for name in TREES:
        p = sub.add_parser(name, parents=[common, term_opts], help=f"{name} tree, cut at --depth")
        p.add_argument("--depth", type=int, default=DEFAULT_TREE_DEPTH)
        p.set_defaults(func=cmd_tree)

    p = sub.add_parser("table", parents=[common, logic_opts], help="Computed truth table of a connective")
    p.add_argument("connective", choices=list(logic.CONNECTIVES))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("axioms", parents=[common, logic_opts], help="Check the axiom suites")
    p.add_argument("--suite", choices=["gs", "bvdp", "all"], default="all")
    p.add_argument("--equation", help="Check a single axiom, e.g. 'GS(11)', at --arity")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("prop", parents=[common, logic_opts], help="Propositions with rec definitions")
    p.add_argument("action", choices=["eval", "parse", "compile", "direct"])
    p.add_argument("text")
    p.add_argument("--assign", help="Variable values, e.g. x=T,y=_|_")
    p.set_defaults(func=cmd_prop)

    p = sub.add_parser("lambdai", parents=[common], help="λI-calculus checks")
    p.add_argument("action", choices=["check", "normalize", "ite", "table"])
    p.add_argument("operand", nargs="?", help="Term (check, normalize) or connective (table)")
    p.add_argument("--file", help="Script of 'Name = term' lines, optionally ending in a query")
    p.add_argument("--arity", type=int, choices=list(lambdai.LAMBDA_I_ARITIES), default=3)
    p.add_argument("--depth", type=int, default=DEFAULT_CLASSIFY_DEPTH)
    p.add_argument("--allow-non-i", action="store_true", help="normalize: skip the λI check")
    p.set_defaults(func=cmd_lambdai)

    p = sub.add_parser("russell", parents=[common], help="Russell's paradox as a λ-term")
    p.add_argument("--steps", type=int, default=3, help="Reduction steps to show")
    p.set_defaults(func=cmd_russell)

    p = sub.add_parser("reproduce", aliases=["reproduce-paper"], parents=[common],
                       help="All golden comparisons; exit 1 if any fails")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("zoo", parents=[common], help="Classification zoo")
    p.set_defaults(func=cmd_zoo)
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="[%(name)s] %(message)s", stream=sys.stderr)
    if args.fuel < 0:
        print("error: --fuel must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UnknownCellError as e:
        print(f"unknown: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    except RecursionError:
        print("unknown: term too deep for this interpreter", file=sys.stderr)
        return EXIT_UNKNOWN
    except (WorkbenchError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> int:
    return run()
