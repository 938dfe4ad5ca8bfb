from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from . import axioms, lambdai, logic
from .classify import Solvable, Unsolvable, Verdict, classify, describe, replay
from .errors import UnknownCellError
from .props import render_russell, russell_demo
from .reduce import DEFAULT_FUEL
from .syntax import parse_term
from .terms import Const, Term

logger = logging.getLogger(__name__)


# =========================
# Classification zoo
# =========================
# (label, term, expected class or "Solvable")
ZOO: Tuple[Tuple[str, str, str], ...] = (
    ("Omega", "OMEGA", "HA"),
    ("Omega I", "OMEGA I", "HA"),
    ("Theta K", "THETA K", "O"),
    ("Theta (\\x. x y)", "THETA (\\x. x y)", "IL"),
    ("Theta (\\x. x I)", "THETA (\\x. x I)", "IL"),
    ("I", "I", "Solvable"),
    ("K", "K", "Solvable"),
    ("T", "T", "Solvable"),
    ("F", "F", "Solvable"),
    ("T T F", "T T F", "Solvable"),
    ("Russell P", "(\\p. p p F T) (\\p. p p F T)", "IL"),
    ("phi1", "THETA (\\x. T x T)", "HA"),
    ("phi2", "THETA (\\x. T T x)", "Solvable"),
)

ZOO_FUEL = 200


def verdict_class(v: Verdict) -> str:
    if isinstance(v, Solvable):
        return "Solvable"
    if isinstance(v, Unsolvable):
        return v.category
    return "Unknown"


@dataclass(frozen=True)
class ZooRow:
    label: str
    term: Term
    expected: str
    verdict: Verdict
    replayed: Optional[bool]

    @property
    def ok(self) -> bool:
        return verdict_class(self.verdict) == self.expected and self.replayed is not False


def run_zoo(fuel: int = ZOO_FUEL) -> List[ZooRow]:
    rows = []
    for label, text, expected in ZOO:
        t = parse_term(text)
        v = classify(t, fuel)
        replayed = replay(v.evidence) if isinstance(v, Unsolvable) else None
        rows.append(ZooRow(label, t, expected, v, replayed))
    return rows


@dataclass(frozen=True)
class ClosureRow:
    connective: str
    left: str
    right: str
    expected: str
    got: str

    @property
    def ok(self) -> bool:
        return self.expected == self.got


def run_closure(fuel: int = DEFAULT_FUEL) -> List[ClosureRow]:
    """
    Applying a connective to an unsolvable first argument keeps its class.
    """
    rows = []
    for u_name, category in (("HA", "HA"), ("IL", "IL"), ("O", "O")):
        u = logic.encode_value(u_name)
        for n_name in ("T", "F", u_name):
            n = logic.encode_value(n_name)
            for conn in ("neg", "conj", "disj", "impl"):
                args = [u] if conn == "neg" else [u, n]
                got = verdict_class(classify(logic.apply_connective(conn, args), fuel))
                rows.append(ClosureRow(conn, u_name, n_name, category, got))
    return rows


# =========================
# Report
# =========================
@dataclass
class Section:
    title: str
    lines: List[str] = field(default_factory=list)
    ok: bool = True


@dataclass
class ReproReport:
    sections: List[Section] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections)


def _tables(fuel: int) -> Section:
    sec = Section("Truth tables")
    for arity in logic.ARITIES:
        for conn in ("neg", "conj", "disj", "impl"):
            table = logic.truth_table(conn, arity, "church", fuel)
            sec.lines.append(f"{conn}, {arity} values")
            sec.lines.extend(logic.render_table(table).splitlines())
            if (conn, arity) in logic.REFERENCE_TABLES:
                for mm in logic.compare_to_reference(table):
                    sec.ok = False
                    sec.lines.append(
                        f"MISMATCH {logic.cell_label(mm.cell)}: expected {logic.LABELS[mm.expected]}, "
                        f"computed {logic.LABELS[mm.computed]}"
                    )
                for c, a, cell in logic.FLAGGED_CELLS:
                    if c == conn and a == arity:
                        printed = logic.reference_cells(c, a)[cell]
                        sec.lines.append(
                            f"flagged {logic.cell_label(cell)}: printed {logic.LABELS[printed]}, "
                            f"computed {logic.LABELS[table.cells[cell]]}"
                        )
            else:
                bad = logic.check_implication(arity, "church", fuel)
                sec.ok = sec.ok and not bad
                sec.lines.append(
                    "x -> y agrees with ~x \\/ y"
                    if not bad
                    else f"MISMATCH x -> y vs ~x \\/ y at {', '.join(logic.cell_label(c) for c in bad)}"
                )
            sec.lines.append("")
    return sec


def _projections(fuel: int) -> Section:
    sec = Section("Projections")
    for conn in ("neg", "conj", "disj", "impl"):
        by_arity = {a: logic.truth_table(conn, a, "church", fuel) for a in logic.ARITIES}
        for src, dst in ((5, 4), (5, 3), (4, 3)):
            good = logic.project_table(by_arity[src], dst) == dict(by_arity[dst].cells)
            sec.ok = sec.ok and good
            sec.lines.append(f"{conn}: {src} -> {dst} {'ok' if good else 'MISMATCH'}")
        two = {k: v for k, v in by_arity[3].cells.items() if all(x in ("T", "F") for x in k)}
        good = two == dict(by_arity[2].cells)
        sec.ok = sec.ok and good
        sec.lines.append(f"{conn}: {{T,F}} part of 3 = 2 {'ok' if good else 'MISMATCH'}")
    return sec


def _axioms(fuel: int) -> Section:
    sec = Section("Axioms")
    for report in (axioms.guzman_squier_suite("church", fuel), axioms.bergstra_vdpol_suite("church", fuel)):
        sec.ok = sec.ok and report.ok
        sec.lines.extend(axioms.render_report(report))
        sec.lines.append("")
    return sec


def _ite(fuel: int) -> Section:
    sec = Section("if-then-else decomposition")
    for row in logic.check_ite_decomposition("church", fuel):
        sec.ok = sec.ok and row.ok
        b, m, n = (logic.LABELS[v] for v in row.triple)
        sec.lines.append(
            f"{b:>3} {m:>3} {n:>3}  ite {logic.LABELS[row.ite_value]:>3}  "
            f"decomposed {logic.LABELS[row.decomposed_value]:>3}  {'ok' if row.ok else 'MISMATCH'}"
        )
    return sec


def _lambda_i(fuel: int) -> Section:
    sec = Section("Lambda-I")
    k_bad = lambdai.validate_lambda_i(parse_term("\\x y. x"))
    ti_ok = lambdai.is_lambda_i(parse_term("T_I")) and lambdai.is_lambda_i(parse_term("F_I"))
    sec.ok = bool(k_bad) and ti_ok
    sec.lines.append(f"\\x y. x rejected: {bool(k_bad)}; T_I and F_I accepted: {ti_ok}")
    for row in lambdai.check_lambda_i_ite(fuel):
        sec.ok = sec.ok and row.ok
        sec.lines.append(f"ite with M={row.then_arg}, N={row.else_arg}: {'ok' if row.ok else 'FAIL'}")
    for arity in (3, 4):
        for conn in ("neg", "conj", "disj", "impl"):
            if (conn, arity) not in logic.REFERENCE_TABLES:
                continue
            chk = lambdai.check_truth_table_i(conn, arity, fuel)
            sec.ok = sec.ok and chk.ok
            cells = ", ".join(
                f"{'/'.join(logic.LABELS[x] for x in mm.cell)}={logic.LABELS[mm.computed]}" for mm in chk.documented
            )
            sec.lines.append(
                f"{conn}, {arity} values: {'ok' if chk.ok else 'MISMATCH'}"
                + (f" (differs from McCarthy at {cells})" if cells else "")
            )
    stream = parse_term("\\v. THETA (\\x y z. x y) v")
    out = lambdai.bot_normalize_i(stream, fuel, require_lambda_i=False)
    good = out == Const("Bot")
    sec.ok = sec.ok and good
    violations = ", ".join(f"\\{v.binder}" for v in lambdai.validate_lambda_i(stream))
    sec.lines.append(f"\\v. THETA (\\x y z. x y) v -> {'_|_' if good else out} (not λI at {violations})")
    return sec


def _russell(fuel: int) -> Section:
    report = russell_demo(3, fuel)
    sec = Section("Russell", render_russell(report))
    sec.ok = (
        isinstance(report.verdict, Unsolvable)
        and report.verdict.category == "IL"
        and isinstance(report.value, logic.TruthValue)
        and report.value.value == "Bot"
    )
    return sec


def _zoo(fuel: int) -> Section:
    sec = Section("Classification zoo")
    for row in run_zoo(min(fuel, ZOO_FUEL)):
        sec.ok = sec.ok and row.ok
        sec.lines.append(f"{row.label:<18}{describe(row.verdict):<40}{'ok' if row.ok else 'MISMATCH'}")
    closure = run_closure(fuel)
    bad = [r for r in closure if not r.ok]
    sec.ok = sec.ok and not bad
    sec.lines.append(f"closure under connectives: {len(closure) - len(bad)}/{len(closure)} keep their class")
    for r in bad:
        sec.lines.append(f"MISMATCH {r.connective}({r.left}, {r.right}): {r.got}, expected {r.expected}")
    return sec


SECTIONS: Tuple[Callable[[int], Section], ...] = (_tables, _projections, _axioms, _ite, _lambda_i, _russell, _zoo)


def run_all(fuel: int = DEFAULT_FUEL) -> ReproReport:
    report = ReproReport()
    for build in SECTIONS:
        try:
            sec = build(fuel)
        except UnknownCellError as e:
            sec = Section(build.__name__.strip("_"), [f"UNKNOWN: {e}"], ok=False)
        logger.debug("section %s: %s", sec.title, "ok" if sec.ok else "FAILED")
        report.sections.append(sec)
    return report


def render(report: ReproReport) -> str:
    out: List[str] = []
    for sec in report.sections:
        out.append(f"== {sec.title} {'(ok)' if sec.ok else '(FAILED)'} ==")
        out.extend(sec.lines)
        out.append("")
    out.append("all golden comparisons pass" if report.ok else "SOME GOLDEN COMPARISONS FAILED")
    return "\n".join(out) + "\n"


def report_to_json(report: ReproReport) -> dict:
    return {
        "ok": report.ok,
        "sections": [{"title": s.title, "ok": s.ok, "lines": s.lines} for s in report.sections],
    }
