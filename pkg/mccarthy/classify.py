from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Tuple, Union

from .reduce import (
    DEFAULT_FUEL,
    CycleDetected,
    FuelExhausted,
    SpineEvent,
    SpineMonitor,
    beta_step_at,
    weak_head_redex,
    whnf_search,
)
from .syntax import format_term
from .terms import LIBRARY, Const, DefEnv, Lam, Term, Token, Var, resolve_head, term_tokens, unwind

logger = logging.getLogger(__name__)

DEFAULT_CLASSIFY_DEPTH = 64

Category = Literal["HA", "IL", "O"]
EvidenceKind = Literal["root-cycle", "spine-cycle", "spine-growth", "lambda-cycle", "constant"]

# Class of a term whose spine head is a bottom constant.
CONST_CATEGORY: Dict[str, Category] = {"Bot": "HA", "HA": "HA", "IL": "IL", "D": "IL", "O": "O"}


# =========================
# Verdicts
# =========================
@dataclass(frozen=True)
class Evidence:
    """
    Replayable certificate. `witness` is the recurring state with `binders`
    stripped above it; `path` points from those binders to the part of the
    witness the certificate talks about.

    root-cycle / spine-cycle: weak head reduction of the witness comes back to
    it after `loop_length` steps, never consuming the outer `floor` arguments.
    spine-growth: the witness prefix comes back with `growth` extra arguments.
    lambda-cycle: the witness comes back after `growth` abstractions were
    emitted, none of them used.
    """
    kind: EvidenceKind
    witness: Term
    binders: Tuple[str, ...]
    loop_length: int
    growth: int = 0
    floor: int = 0
    path: str = ""


@dataclass(frozen=True)
class Solvable:
    binders: Tuple[str, ...]
    head: str
    arg_count: int
    steps: int = 0
    args: Tuple[Term, ...] = field(default=(), repr=False, compare=False)


@dataclass(frozen=True)
class Unsolvable:
    category: Category
    evidence: Evidence
    steps: int = 0


@dataclass(frozen=True)
class Unknown:
    reason: Literal["FuelExhausted", "DepthExhausted"]
    steps: int = 0


Verdict = Union[Solvable, Unsolvable, Unknown]


@dataclass(frozen=True)
class RootActive:
    evidence: Evidence


@dataclass(frozen=True)
class RootStable:
    form: Term
    reason: Literal["abstraction", "variable-head", "constant-head", "root-active-head", "left-spine"]


RootVerdict = Union[RootActive, RootStable, Unknown]


@dataclass(frozen=True)
class Solvability:
    answer: Literal["yes", "no", "unknown"]
    verdict: Verdict

    @property
    def category(self) -> Optional[Category]:
        return self.verdict.category if isinstance(self.verdict, Unsolvable) else None


# =========================
# Head search with binder stripping
# =========================
def _spine_evidence(event: SpineEvent, mon: SpineMonitor, binders: Tuple[str, ...]) -> Tuple[Category, Evidence]:
    path = "b" * len(binders) + "f" * event.floor
    witness = mon.state(event.start)
    if event.kind == "growth":
        ev = Evidence("spine-growth", witness, binders, event.loop_length, event.growth, event.floor, path)
        return "IL", ev
    kind: EvidenceKind = "root-cycle" if event.floor == 0 else "spine-cycle"
    return "HA", Evidence(kind, witness, binders, event.loop_length, 0, event.floor, path)


def classify(
    t: Term,
    fuel: int = DEFAULT_FUEL,
    depth: int = DEFAULT_CLASSIFY_DEPTH,
    env: DefEnv = LIBRARY,
) -> Verdict:
    """
    Weak head reduction, stripping every abstraction it produces.

    - variable head: Solvable
    - constant head: class of the constant
    - spine cycle: HA; spine growth: IL
    - a state right after a strip that repeats an earlier such state, with the
      abstractions emitted in between unused: O
    """
    if fuel < 0 or depth < 0:
        raise ValueError("fuel and depth must be >= 0")
    ctx: List[str] = []
    # first state of each binder depth: (depth, state, its tokens, steps so far)
    firsts: List[Tuple[int, Term, Tuple[Token, ...], int]] = []
    cur = t
    steps = 0
    mon = SpineMonitor(env)
    fresh_segment = True

    while True:
        if fresh_segment:
            d = len(ctx)
            outer = tuple(ctx)
            for d0, q, q_tokens, q_steps in firsts:
                if term_tokens(cur, env, outer, cut=d0) == q_tokens:
                    ev = Evidence("lambda-cycle", q, outer[:d0], steps - q_steps, d - d0, 0, "b" * d0)
                    logger.debug("lambda cycle: depth %d repeats depth %d", d, d0)
                    return Unsolvable("O", ev, steps)
            firsts.append((d, cur, term_tokens(cur, env, outer), steps))
            fresh_segment = False

        head, args = unwind(resolve_head(cur, env))
        if isinstance(head, Lam) and not args:
            if len(ctx) >= depth:
                logger.debug("classify: depth %d exhausted", depth)
                return Unknown("DepthExhausted", steps)
            ctx.append(head.binder)
            cur = head.body
            mon = SpineMonitor(env, outer=tuple(ctx))
            fresh_segment = True
            continue
        if isinstance(head, Var):
            return Solvable(tuple(ctx), head.name, len(args), steps, tuple(args))
        if isinstance(head, Const):
            binders = tuple(ctx)
            ev = Evidence("constant", resolve_head(cur, env), binders, 0, 0, len(args), "b" * len(binders) + "f" * len(args))
            return Unsolvable(CONST_CATEGORY[head.tag], ev, steps)

        event = mon.observe(head, args)
        if event is not None:
            category, ev = _spine_evidence(event, mon, tuple(ctx))
            return Unsolvable(category, ev, steps)
        if steps >= fuel:
            logger.debug("classify: fuel exhausted after %d steps", steps)
            return Unknown("FuelExhausted", steps)
        cur = beta_step_at(cur, "f" * (len(args) - 1), env)
        steps += 1


def is_solvable(
    t: Term,
    fuel: int = DEFAULT_FUEL,
    depth: int = DEFAULT_CLASSIFY_DEPTH,
    env: DefEnv = LIBRARY,
) -> Solvability:
    v = classify(t, fuel, depth, env)
    if isinstance(v, Solvable):
        return Solvability("yes", v)
    if isinstance(v, Unsolvable):
        return Solvability("no", v)
    return Solvability("unknown", v)


def is_root_active(t: Term, fuel: int = DEFAULT_FUEL, env: DefEnv = LIBRARY) -> RootVerdict:
    """
    Weak head reduction only. A cycle that never leaves the root proves
    root-activity; every other definite outcome is a root-stable form.
    """
    out = whnf_search(t, fuel, env)
    if isinstance(out, FuelExhausted):
        return Unknown("FuelExhausted", out.steps)
    if isinstance(out, CycleDetected):
        if out.growth:
            return RootStable(out.last, "left-spine")  # type: ignore[arg-type]
        if out.floor:
            return RootStable(out.last, "root-active-head")  # type: ignore[arg-type]
        return RootActive(Evidence("root-cycle", out.witness, (), out.loop_length))
    form = resolve_head(out.term, env)
    head, args = unwind(form)
    if isinstance(head, Lam):
        return RootStable(form, "abstraction")
    if isinstance(head, Const):
        if not args and CONST_CATEGORY[head.tag] == "HA":
            return RootActive(Evidence("constant", form, (), 0))
        return RootStable(form, "constant-head")
    return RootStable(form, "variable-head")


# =========================
# Replay
# =========================
def replay(ev: Evidence, env: DefEnv = LIBRARY) -> bool:
    """
    Re-run weak head reduction from the witness and check the certificate.
    """
    if ev.kind == "constant":
        head, args = unwind(resolve_head(ev.witness, env))
        return isinstance(head, Const) and len(args) == ev.floor
    if ev.kind == "lambda-cycle":
        return _replay_lambda(ev, env)

    mon = SpineMonitor(env, outer=ev.binders)
    cur = ev.witness
    for k in range(ev.loop_length + 1):
        found = weak_head_redex(cur, env)
        if found is None:
            return False
        pos, head, args = found
        event = mon.observe(head, args)
        if k < ev.loop_length:
            if event is not None:
                return False
            cur = beta_step_at(cur, pos, env)
            continue
        if event is None or event.start != 0:
            return False
        kind = "spine-growth" if event.kind == "growth" else ("root-cycle" if event.floor == 0 else "spine-cycle")
        return kind == ev.kind and event.growth == ev.growth and event.floor == ev.floor
    return False


def _replay_lambda(ev: Evidence, env: DefEnv) -> bool:
    base = len(ev.binders)
    ctx = list(ev.binders)
    target = term_tokens(ev.witness, env, ev.binders)
    cur = ev.witness
    steps = 0
    while steps <= ev.loop_length:
        head, args = unwind(resolve_head(cur, env))
        if isinstance(head, Lam) and not args:
            ctx.append(head.binder)
            cur = head.body
            if len(ctx) - base == ev.growth:
                return steps == ev.loop_length and term_tokens(cur, env, tuple(ctx), cut=base) == target
            continue
        if not (isinstance(head, Lam) and args):
            return False
        cur = beta_step_at(cur, "f" * (len(args) - 1), env)
        steps += 1
    return False


# =========================
# Output
# =========================
def describe(v: Union[Verdict, RootVerdict]) -> str:
    if isinstance(v, Solvable):
        lam = "".join(f"\\{x}." for x in v.binders)
        return f"Solvable({lam}{v.head} with {v.arg_count} args)"
    if isinstance(v, Unsolvable):
        return f"Unsolvable({v.category})"
    if isinstance(v, RootActive):
        return "RootActive"
    if isinstance(v, RootStable):
        return f"RootStable({v.reason})"
    return f"Unknown({v.reason})"


def evidence_to_json(ev: Evidence) -> dict:
    return {
        "kind": ev.kind,
        "witness": format_term(ev.witness),
        "binders": list(ev.binders),
        "loop_length": ev.loop_length,
        "growth": ev.growth,
        "floor": ev.floor,
        "path": ev.path,
    }


def verdict_to_json(v: Union[Verdict, RootVerdict]) -> dict:
    if isinstance(v, Solvable):
        return {"verdict": "Solvable", "binders": list(v.binders), "head": v.head,
                "arg_count": v.arg_count, "steps": v.steps}
    if isinstance(v, Unsolvable):
        return {"verdict": "Unsolvable", "class": v.category,
                "evidence": evidence_to_json(v.evidence), "steps": v.steps}
    if isinstance(v, RootActive):
        return {"verdict": "RootActive", "evidence": evidence_to_json(v.evidence)}
    if isinstance(v, RootStable):
        return {"verdict": "RootStable", "reason": v.reason, "form": format_term(v.form)}
    return {"verdict": "Unknown", "reason": v.reason, "steps": v.steps}


__all__ = [
    "DEFAULT_CLASSIFY_DEPTH",
    "Category",
    "Evidence",
    "Solvable",
    "Unsolvable",
    "Unknown",
    "Verdict",
    "RootActive",
    "RootStable",
    "Solvability",
    "classify",
    "is_solvable",
    "is_root_active",
    "replay",
    "describe",
    "verdict_to_json",
]
