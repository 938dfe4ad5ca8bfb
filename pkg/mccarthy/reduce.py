from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

from .errors import RedexError
from .syntax import format_term
from .terms import (
    LIBRARY,
    App,
    DefEnv,
    Lam,
    Ref,
    Term,
    resolve_head,
    strip_lams,
    substitute,
    term_tokens,
    token_digest,
    unwind,
)

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 10_000

Strategy = Literal["normal", "innermost"]


# =========================
# Outcomes + traces
# =========================
@dataclass(frozen=True)
class TraceStep:
    term: Term
    pos: Optional[str]  # redex contracted to reach the next entry; None on the last


@dataclass(frozen=True)
class NormalForm:
    term: Term
    steps: int
    trace: Tuple[TraceStep, ...] = ()


@dataclass(frozen=True)
class FuelExhausted:
    last: Term
    steps: int
    trace: Tuple[TraceStep, ...] = ()


@dataclass(frozen=True)
class CycleDetected:
    """
    The strategy revisited `witness` after `loop_length` steps. With
    growth > 0 only a spine prefix recurred and `growth` arguments were added
    in front of `floor` outer arguments that the loop never touches.
    """
    witness: Term
    loop_length: int
    steps: int
    growth: int = 0
    floor: int = 0
    last: Optional[Term] = None
    trace: Tuple[TraceStep, ...] = ()


ReduceOutcome = Union[NormalForm, FuelExhausted, CycleDetected]


# =========================
# Paths: "f" function, "a" argument, "b" abstraction body
# =========================
def _unfold(t: Term, env: DefEnv) -> Term:
    while isinstance(t, Ref):
        t = env.resolve(t.name)
    return t


def subterm_at(t: Term, pos: str, env: DefEnv = LIBRARY) -> Term:
    cur = t
    for ch in pos:
        cur = _unfold(cur, env)
        if ch == "f" and isinstance(cur, App):
            cur = cur.fun
        elif ch == "a" and isinstance(cur, App):
            cur = cur.arg
        elif ch == "b" and isinstance(cur, Lam):
            cur = cur.body
        else:
            raise RedexError(f"Path {pos!r} leaves the term at {ch!r}")
    return cur


def is_redex(t: Term, env: DefEnv = LIBRARY) -> bool:
    t = _unfold(t, env)
    return isinstance(t, App) and isinstance(_unfold(t.fun, env), Lam)


def beta_step_at(t: Term, pos: str, env: DefEnv = LIBRARY) -> Term:
    """
    Contract the redex at `pos`. Refs met on the way are unfolded.
    """
    spine: List[Tuple[Term, str]] = []
    cur = t
    for ch in pos:
        cur = _unfold(cur, env)
        spine.append((cur, ch))
        if ch == "f" and isinstance(cur, App):
            cur = cur.fun
        elif ch == "a" and isinstance(cur, App):
            cur = cur.arg
        elif ch == "b" and isinstance(cur, Lam):
            cur = cur.body
        else:
            raise RedexError(f"Path {pos!r} leaves the term at {ch!r}")
    cur = _unfold(cur, env)
    if not isinstance(cur, App):
        raise RedexError(f"No redex at {pos!r}: not an application")
    fun = _unfold(cur.fun, env)
    if not isinstance(fun, Lam):
        raise RedexError(f"No redex at {pos!r}: function part is not an abstraction")
    new = substitute(fun.body, fun.binder, cur.arg)
    for node, ch in reversed(spine):
        if ch == "f":
            new = App(new, node.arg)  # type: ignore[union-attr]
        elif ch == "a":
            new = App(node.fun, new)  # type: ignore[union-attr]
        else:
            new = Lam(node.binder, new)  # type: ignore[union-attr]
    return new


def _leftmost_outermost(t: Term, env: DefEnv) -> Optional[str]:
    stack: List[Tuple[Term, str]] = [(t, "")]
    while stack:
        node, path = stack.pop()
        node = _unfold(node, env)
        if isinstance(node, App):
            if isinstance(_unfold(node.fun, env), Lam):
                return path
            stack.append((node.arg, path + "a"))
            stack.append((node.fun, path + "f"))
        elif isinstance(node, Lam):
            stack.append((node.body, path + "b"))
    return None


def _rightmost_innermost(t: Term, env: DefEnv) -> Optional[str]:
    stack: List[Tuple[Term, str, bool]] = [(t, "", False)]
    while stack:
        node, path, done = stack.pop()
        if done:
            if is_redex(node, env):
                return path
            continue
        node = _unfold(node, env)
        if isinstance(node, App):
            stack.append((node, path, True))
            stack.append((node.fun, path + "f", False))
            stack.append((node.arg, path + "a", False))
        elif isinstance(node, Lam):
            stack.append((node.body, path + "b", False))
    return None


def redex_path(t: Term, strategy: Strategy = "normal", env: DefEnv = LIBRARY) -> Optional[str]:
    if strategy == "normal":
        return _leftmost_outermost(t, env)
    if strategy == "innermost":
        return _rightmost_innermost(t, env)
    raise ValueError(f"Bad strategy: {strategy!r}")


# =========================
# Full normalization
# =========================
def normalize(
    t: Term,
    fuel: int = DEFAULT_FUEL,
    env: DefEnv = LIBRARY,
    strategy: Strategy = "normal",
    trace: bool = False,
) -> ReduceOutcome:
    """
    Iterate the strategy. Every visited term is remembered by the digest of
    its nameless form; a revisit is confirmed exactly before it is reported.
    """
    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    seen: Dict[bytes, List[int]] = {}
    visited: List[Term] = []
    steps: List[TraceStep] = []
    cur = t
    n = 0
    while True:
        pos = redex_path(cur, strategy, env)
        if pos is None:
            steps.append(TraceStep(cur, None))
            return NormalForm(cur, n, tuple(steps) if trace else ())
        toks = term_tokens(cur, env)
        key = token_digest(toks)
        for i in seen.get(key, ()):
            if term_tokens(visited[i], env) == toks:
                steps.append(TraceStep(cur, pos))
                logger.debug("cycle of length %d after %d steps", n - i, n)
                return CycleDetected(visited[i], n - i, n, last=cur, trace=tuple(steps) if trace else ())
        seen.setdefault(key, []).append(len(visited))
        visited.append(cur)
        if n >= fuel:
            steps.append(TraceStep(cur, pos))
            logger.debug("fuel exhausted after %d steps", n)
            return FuelExhausted(cur, n, tuple(steps) if trace else ())
        if trace:
            steps.append(TraceStep(cur, pos))
        cur = beta_step_at(cur, pos, env)
        n += 1


# =========================
# Head reduction
# =========================
def head_redex(t: Term, env: DefEnv = LIBRARY) -> Optional[str]:
    """
    Path of the head redex of λx1…xn.(λx.P)Q M…, or None for a head normal form.
    """
    depth = 0
    cur = _unfold(t, env)
    while True:
        names, body = strip_lams(cur)
        depth += len(names)
        head, args = unwind(resolve_head(body, env))
        if isinstance(head, Lam) and not args:
            # a Ref in body position unfolded to an abstraction
            cur = head
            continue
        break
    if isinstance(head, Lam) and args:
        return "b" * depth + "f" * (len(args) - 1)
    return None


def head_step(t: Term, env: DefEnv = LIBRARY) -> Optional[Term]:
    pos = head_redex(t, env)
    if pos is None:
        return None
    return beta_step_at(t, pos, env)


def head_reduce(t: Term, fuel: int = DEFAULT_FUEL, env: DefEnv = LIBRARY, trace: bool = False) -> ReduceOutcome:
    """
    Repeated head steps; NormalForm here means head normal form.
    """
    seen: Dict[bytes, List[int]] = {}
    visited: List[Term] = []
    steps: List[TraceStep] = []
    cur = t
    n = 0
    while True:
        pos = head_redex(cur, env)
        if pos is None:
            steps.append(TraceStep(cur, None))
            return NormalForm(cur, n, tuple(steps) if trace else ())
        toks = term_tokens(cur, env)
        key = token_digest(toks)
        for i in seen.get(key, ()):
            if term_tokens(visited[i], env) == toks:
                steps.append(TraceStep(cur, pos))
                return CycleDetected(visited[i], n - i, n, last=cur, trace=tuple(steps) if trace else ())
        seen.setdefault(key, []).append(len(visited))
        visited.append(cur)
        if n >= fuel:
            steps.append(TraceStep(cur, pos))
            return FuelExhausted(cur, n, tuple(steps) if trace else ())
        if trace:
            steps.append(TraceStep(cur, pos))
        cur = beta_step_at(cur, pos, env)
        n += 1


# =========================
# Spine monitor (weak head reduction certificates)
# =========================
@dataclass(frozen=True)
class SpineEvent:
    kind: Literal["cycle", "growth"]
    start: int       # index of the recurring state
    loop_length: int
    growth: int      # arguments added per loop (0 for a cycle)
    floor: int       # outer arguments never touched inside the loop
    inner: int       # arguments of the recurring prefix


class SpineMonitor:
    """
    Watches the states of weak head reduction, each given as its spine
    (head abstraction, arguments). State k repeats state i when the prefix of
    i with `a` arguments recurs in k while the outer n_i - a arguments of i were
    never consumed in between. Equal spine lengths give a cycle; a longer
    spine at k gives growth of the left spine.
    """

    def __init__(self, env: DefEnv = LIBRARY, outer: Tuple[str, ...] = ()) -> None:
        self.env = env
        self.outer = outer
        self.states: List[Tuple[Term, Sequence[Term]]] = []
        self.nargs: List[int] = []
        self.index: Dict[bytes, List[int]] = {}

    def _comp(self, t: Term) -> Tuple:
        return term_tokens(t, self.env, self.outer)

    def observe(self, head: Term, args: Sequence[Term]) -> Optional[SpineEvent]:
        k = len(self.nargs)
        n = len(args)
        h = hashlib.blake2b(digest_size=16)
        prefix: List[bytes] = []
        for comp in [head, *args]:
            h.update(token_digest(self._comp(comp)))
            prefix.append(h.digest())

        event: Optional[SpineEvent] = None
        for a in range(n, -1, -1):
            for i in self.index.get(prefix[a], ()):
                n_i = self.nargs[i]
                if n < n_i:
                    continue
                o = n_i - a
                lo = min(self.nargs[i:k])
                if lo < o + 1:
                    continue
                if not self._same_prefix(i, head, args, a):
                    continue
                m = n - n_i
                if m == 0:
                    event = SpineEvent("cycle", i, k - i, 0, lo - 1, n_i - (lo - 1))
                else:
                    event = SpineEvent("growth", i, k - i, m, o, a)
                break
            if event is not None:
                break

        for a in range(n + 1):
            self.index.setdefault(prefix[a], []).append(k)
        self.states.append((head, tuple(args)))
        self.nargs.append(n)
        if event is not None:
            logger.debug("spine %s: start=%d loop=%d growth=%d floor=%d",
                         event.kind, event.start, event.loop_length, event.growth, event.floor)
        return event

    def _same_prefix(self, i: int, head: Term, args: Sequence[Term], a: int) -> bool:
        old_head, old_args = self.states[i]
        if self._comp(old_head) != self._comp(head):
            return False
        return all(self._comp(old_args[j]) == self._comp(args[j]) for j in range(a))

    def state(self, i: int) -> Term:
        head, args = self.states[i]
        t = head
        for x in args:
            t = App(t, x)
        return t


def weak_head_redex(t: Term, env: DefEnv = LIBRARY) -> Optional[Tuple[str, Term, List[Term]]]:
    """
    (path, head, args) of the spine-head redex, or None when `t` is a weak
    head normal form (abstraction or non-abstraction head).
    """
    head, args = unwind(resolve_head(t, env))
    if isinstance(head, Lam) and args:
        return "f" * (len(args) - 1), head, args
    return None


def whnf_search(
    t: Term,
    fuel: int = DEFAULT_FUEL,
    env: DefEnv = LIBRARY,
    trace: bool = False,
) -> ReduceOutcome:
    """
    Contract the spine-head redex until an abstraction or a non-abstraction
    head appears. Revisits of the spine (pure or with a growing spine) stop
    the search with a certificate.
    """
    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    mon = SpineMonitor(env)
    steps: List[TraceStep] = []
    cur = t
    n = 0
    while True:
        found = weak_head_redex(cur, env)
        if found is None:
            steps.append(TraceStep(cur, None))
            return NormalForm(cur, n, tuple(steps) if trace else ())
        pos, head, args = found
        event = mon.observe(head, args)
        if event is not None:
            steps.append(TraceStep(cur, pos))
            return CycleDetected(
                mon.state(event.start), event.loop_length, n,
                growth=event.growth, floor=event.floor, last=cur,
                trace=tuple(steps) if trace else (),
            )
        if n >= fuel:
            steps.append(TraceStep(cur, pos))
            logger.debug("whnf search: fuel exhausted after %d steps", n)
            return FuelExhausted(cur, n, tuple(steps) if trace else ())
        if trace:
            steps.append(TraceStep(cur, pos))
        cur = beta_step_at(cur, pos, env)
        n += 1


# =========================
# Trace rendering
# =========================
def render_trace(trace: Sequence[TraceStep], unicode: bool = False) -> str:
    lines = []
    for i, st in enumerate(trace):
        arrow = "   " if i == 0 else "-> "
        lines.append(arrow + format_term(st.term, unicode=unicode, mark=st.pos))
    return "\n".join(lines)


def trace_to_json(trace: Sequence[TraceStep]) -> List[dict]:
    return [{"term": format_term(st.term), "redex": st.pos} for st in trace]


def describe_outcome(out: ReduceOutcome, unicode: bool = False) -> str:
    if isinstance(out, NormalForm):
        return f"normal form after {out.steps} steps: {format_term(out.term, unicode=unicode)}"
    if isinstance(out, FuelExhausted):
        return f"fuel exhausted after {out.steps} steps"
    if out.growth:
        return (
            f"no normal form: spine grows by {out.growth} every {out.loop_length} steps "
            f"(found after {out.steps} steps)"
        )
    return f"no normal form: cycle of length {out.loop_length} (found after {out.steps} steps)"


def outcome_to_json(out: ReduceOutcome) -> dict:
    if isinstance(out, NormalForm):
        body = {"outcome": "normal-form", "term": format_term(out.term), "steps": out.steps}
    elif isinstance(out, FuelExhausted):
        body = {"outcome": "fuel-exhausted", "last": format_term(out.last), "steps": out.steps}
    else:
        body = {
            "outcome": "cycle",
            "witness": format_term(out.witness),
            "loop_length": out.loop_length,
            "growth": out.growth,
            "floor": out.floor,
            "steps": out.steps,
        }
    if out.trace:
        body["trace"] = trace_to_json(out.trace)
    return body
