from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .classify import Unknown
from .errors import UnknownCellError
from .logic import DOMAINS, LABELS, Style
from .props import Prop, format_prop, parse_prop, prop_vars, eval_prop
from .reduce import DEFAULT_FUEL

logger = logging.getLogger(__name__)

METAVARIABLES: Tuple[str, ...] = ("x", "y", "z")


# =========================
# Equations
# =========================
@dataclass(frozen=True)
class Equation:
    system: str
    number: str
    lhs: Prop
    rhs: Prop

    @property
    def name(self) -> str:
        return f"{self.system}({self.number})"

    @property
    def variables(self) -> Tuple[str, ...]:
        used = prop_vars(self.lhs) | prop_vars(self.rhs)
        return tuple(v for v in METAVARIABLES if v in used)

    def __str__(self) -> str:
        return f"{format_prop(self.lhs)} = {format_prop(self.rhs)}"


def equation(system: str, number: Union[int, str], text: str) -> Equation:
    """
    "lhs = rhs" in the proposition syntax, over the metavariables x, y, z.
    """
    sides = text.split("=")
    if len(sides) != 2:
        raise ValueError(f"Bad equation: {text!r}")
    lhs, lenv = parse_prop(sides[0])
    rhs, renv = parse_prop(sides[1])
    if lenv.defs or renv.defs:
        raise ValueError(f"Equations may not use rec: {text!r}")
    extra = (prop_vars(lhs) | prop_vars(rhs)) - set(METAVARIABLES)
    if extra:
        raise ValueError(f"Bad metavariables {sorted(extra)} in {text!r}")
    return Equation(system, str(number), lhs, rhs)


GUZMAN_SQUIER: Tuple[Equation, ...] = tuple(
    equation("GS", i, text)
    for i, text in enumerate(
        [
            "~T = F",
            "~_|_ = _|_",
            "~~x = x",
            "~(x /\\ y) = ~x \\/ ~y",
            "x -> y = ~x \\/ y",
            "x /\\ (y /\\ z) = (x /\\ y) /\\ z",
            "T /\\ x = x",
            "x \\/ (x /\\ y) = x",
            "x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z)",
            "(x \\/ y) /\\ z = (x /\\ z) \\/ (~x /\\ y /\\ z)",
            "(x /\\ y) \\/ (y /\\ x) = (y /\\ x) \\/ (x /\\ y)",
        ],
        start=1,
    )
)

# m is _HA, d is _D. Axiom 9 is kept with its repeated last disjunct; 9' is
# the same law in the three-valued system's form.
BERGSTRA_VDPOL: Tuple[Equation, ...] = (
    equation("BvdP", 1, "~_D = _D"),
    equation("BvdP", 2, "~_HA = _HA"),
    equation("BvdP", 3, "~T = F"),
    equation("BvdP", 4, "~~x = x"),
    equation("BvdP", 5, "T /\\ x = x"),
    equation("BvdP", 6, "F /\\ x = F"),
    equation("BvdP", 7, "x \\/ y = ~(~x /\\ ~y)"),
    equation("BvdP", 8, "x /\\ (y /\\ z) = (x /\\ y) /\\ z"),
    equation("BvdP", 9, "(x \\/ y) /\\ z = (~x /\\ y /\\ z) \\/ (x /\\ z) \\/ (x /\\ z)"),
    equation("BvdP", "9'", "(x \\/ y) /\\ z = (x /\\ z) \\/ (~x /\\ y /\\ z)"),
)

# Five values: ~d = d gives way to ~p = p for every bottom value.
BERGSTRA_VDPOL_5: Tuple[Equation, ...] = (
    equation("BvdP", "1/HA", "~_HA = _HA"),
    equation("BvdP", "1/IL", "~_IL = _IL"),
    equation("BvdP", "1/O", "~_O = _O"),
) + BERGSTRA_VDPOL[2:]


# =========================
# Checking
# =========================
@dataclass(frozen=True)
class Holds:
    checked: int


@dataclass(frozen=True)
class CounterExample:
    assignment: Tuple[Tuple[str, str], ...]
    lhs: str
    rhs: str
    checked: int


Outcome = Union[Holds, CounterExample]


def _value(p: Prop, asg: dict, arity: int, style: Style, fuel: int) -> str:
    out = eval_prop(p, assignment=asg, arity=arity, style=style, fuel=fuel)
    if isinstance(out, Unknown):
        raise UnknownCellError(f"Unknown value ({out.reason}) at {asg}", tuple(sorted(asg.items())))
    return out.value


def check_equation(e: Equation, arity: int = 3, style: Style = "church", fuel: int = DEFAULT_FUEL) -> Outcome:
    """
    Exhaustive over all assignments, in enumeration order; the first
    disagreement is the counterexample.
    """
    names = e.variables
    checked = 0
    for combo in itertools.product(DOMAINS[arity], repeat=len(names)):
        asg = dict(zip(names, combo))
        lhs = _value(e.lhs, asg, arity, style, fuel)
        rhs = _value(e.rhs, asg, arity, style, fuel)
        checked += 1
        if lhs != rhs:
            logger.debug("%s fails at arity %d: %s", e.name, arity, asg)
            return CounterExample(tuple(asg.items()), lhs, rhs, checked)
    return Holds(checked)


@dataclass(frozen=True)
class AxiomResult:
    equation: Equation
    arity: int
    outcome: Outcome
    expect_holds: bool = True

    @property
    def ok(self) -> bool:
        return isinstance(self.outcome, Holds) == self.expect_holds


@dataclass(frozen=True)
class CheckReport:
    title: str
    style: str
    results: Tuple[AxiomResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def holds(self) -> int:
        return sum(isinstance(r.outcome, Holds) for r in self.results)


def guzman_squier_suite(style: Style = "church", fuel: int = DEFAULT_FUEL) -> CheckReport:
    results = tuple(AxiomResult(e, 3, check_equation(e, 3, style, fuel)) for e in GUZMAN_SQUIER)
    return CheckReport("Guzman-Squier, 3 values", style, results)


def bergstra_vdpol_suite(style: Style = "church", fuel: int = DEFAULT_FUEL) -> CheckReport:
    """
    All axioms at arity 4, commutation law GS(11) expected to fail there, and
    the five-valued variant. The λI style has no five-valued encoding.
    """
    results: List[AxiomResult] = [AxiomResult(e, 4, check_equation(e, 4, style, fuel)) for e in BERGSTRA_VDPOL]
    gs11 = GUZMAN_SQUIER[10]
    results.append(AxiomResult(gs11, 4, check_equation(gs11, 4, style, fuel), expect_holds=False))
    if style == "church":
        results.extend(AxiomResult(e, 5, check_equation(e, 5, style, fuel)) for e in BERGSTRA_VDPOL_5)
    return CheckReport("Bergstra-Van de Pol, 4 and 5 values", style, tuple(results))


# =========================
# Output
# =========================
def describe_outcome(outcome: Outcome) -> str:
    if isinstance(outcome, Holds):
        return f"holds ({outcome.checked} assignments)"
    asg = ", ".join(f"{k}={LABELS[v]}" for k, v in outcome.assignment)
    return f"fails at {asg}: lhs {LABELS[outcome.lhs]}, rhs {LABELS[outcome.rhs]}"


def render_report(report: CheckReport) -> List[str]:
    width = max(len(r.equation.name) for r in report.results) + 2
    header = f"{'axiom':<{width}}{'n':>2}  {'ok':<4}result"
    lines = [f"{report.title} [{report.style}]", header, "-" * len(header)]
    for r in report.results:
        mark = "ok" if r.ok else "FAIL"
        lines.append(f"{r.equation.name:<{width}}{r.arity:>2}  {mark:<4}{describe_outcome(r.outcome)}   {r.equation}")
    lines.append(f"{report.holds}/{len(report.results)} hold, {'all as expected' if report.ok else 'UNEXPECTED RESULTS'}")
    return lines


def report_to_json(report: CheckReport) -> dict:
    def outcome_json(o: Outcome) -> dict:
        if isinstance(o, Holds):
            return {"status": "holds", "checked": o.checked}
        return {
            "status": "counterexample",
            "assignment": dict(o.assignment),
            "lhs": o.lhs,
            "rhs": o.rhs,
            "checked": o.checked,
        }

    return {
        "title": report.title,
        "style": report.style,
        "ok": report.ok,
        "results": [
            {
                "axiom": r.equation.name,
                "equation": str(r.equation),
                "arity": r.arity,
                "expect_holds": r.expect_holds,
                "ok": r.ok,
                **outcome_json(r.outcome),
            }
            for r in report.results
        ],
    }


def find_equation(name: str) -> Optional[Equation]:
    for e in GUZMAN_SQUIER + BERGSTRA_VDPOL + BERGSTRA_VDPOL_5:
        if e.name == name:
            return e
    return None
