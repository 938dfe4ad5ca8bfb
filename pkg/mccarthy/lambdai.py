from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from . import logic
from .classify import DEFAULT_CLASSIFY_DEPTH, Solvable, Unknown, Unsolvable, classify
from .errors import LambdaIError
from .reduce import DEFAULT_FUEL, NormalForm, normalize
from .terms import LIBRARY, App, Const, DefEnv, Lam, Ref, Term, Var, alpha_eq, app, lam

logger = logging.getLogger(__name__)

LAMBDA_I_ARITIES: Tuple[int, ...] = (2, 3, 4)
BOT = Const("Bot")


# =========================
# Validation
# =========================
@dataclass(frozen=True)
class LambdaIViolation:
    path: str
    binder: str


def validate_lambda_i(t: Term, env: DefEnv = LIBRARY) -> List[LambdaIViolation]:
    """
    Every abstraction whose binder is not free in its body. Refs are looked
    through, so a path may continue inside a definition.
    """
    found: List[LambdaIViolation] = []
    stack: List[Tuple[Term, str]] = [(t, "")]
    while stack:
        node, path = stack.pop()
        while isinstance(node, Ref):
            node = env.resolve(node.name)
        if isinstance(node, Lam):
            if node.binder not in node.body.free:
                found.append(LambdaIViolation(path, node.binder))
            stack.append((node.body, path + "b"))
        elif isinstance(node, App):
            stack.append((node.arg, path + "a"))
            stack.append((node.fun, path + "f"))
    found.sort(key=lambda v: v.path)
    return found


def is_lambda_i(t: Term, env: DefEnv = LIBRARY) -> bool:
    return not validate_lambda_i(t, env)


def ensure_lambda_i(t: Term, env: DefEnv = LIBRARY) -> None:
    bad = validate_lambda_i(t, env)
    if bad:
        where = ", ".join(f"\\{v.binder} at {v.path or 'root'}" for v in bad)
        raise LambdaIError(f"not a λI-term: {where}", tuple(bad))


# =========================
# βbot normal forms
# =========================
def bot_normalize_i(
    t: Term,
    fuel: int = DEFAULT_FUEL,
    depth: int = DEFAULT_CLASSIFY_DEPTH,
    env: DefEnv = LIBRARY,
    require_lambda_i: bool = True,
) -> Union[Term, Unknown]:
    """
    The term's finite normal form, or ⊥ when it has none. A head normal form
    has a finite normal form only if all its arguments do, so one ⊥ argument
    makes the whole term ⊥. For λI-terms this is the βbot normal form.
    """
    if require_lambda_i:
        ensure_lambda_i(t, env)
    return _bot_nf(t, fuel, depth, env)


def _bot_nf(t: Term, fuel: int, depth: int, env: DefEnv) -> Union[Term, Unknown]:
    if depth <= 0:
        return Unknown("DepthExhausted")
    v = classify(t, fuel, DEFAULT_CLASSIFY_DEPTH, env)
    if isinstance(v, Unsolvable):
        return BOT
    if isinstance(v, Unknown):
        return v
    assert isinstance(v, Solvable)
    args: List[Term] = []
    for a in v.args:
        sub = _bot_nf(a, fuel, depth - 1, env)
        if isinstance(sub, Unknown):
            return sub
        if sub == BOT:
            return BOT
        args.append(sub)
    return lam(*v.binders, app(Var(v.head), *args))


# =========================
# if-then-else with λI booleans
# =========================
@dataclass(frozen=True)
class IteCheck:
    then_arg: str
    else_arg: str
    true_unfolds: bool    # T_I M N reaches N I I M
    true_result: bool     # N I I M reaches M
    false_unfolds: bool   # F_I M N reaches M I I I N
    false_result: bool    # M I I I N reaches N

    @property
    def ok(self) -> bool:
        return self.true_unfolds and self.true_result and self.false_unfolds and self.false_result


def _passes_through(start: Term, target: Term, fuel: int, env: DefEnv) -> bool:
    out = normalize(start, fuel, env, trace=True)
    return any(alpha_eq(st.term, target, env) for st in out.trace)


def _reaches(start: Term, target: Term, fuel: int, env: DefEnv) -> bool:
    out = normalize(start, fuel, env)
    return isinstance(out, NormalForm) and alpha_eq(out.term, target, env)


def check_lambda_i_ite(fuel: int = DEFAULT_FUEL, env: DefEnv = LIBRARY) -> List[IteCheck]:
    ti, fi, i = Ref("T_I"), Ref("F_I"), Ref("I")
    rows: List[IteCheck] = []
    for m_name, n_name in (("T_I", "T_I"), ("T_I", "F_I"), ("F_I", "T_I"), ("F_I", "F_I")):
        m, n = Ref(m_name), Ref(n_name)
        then_form = app(n, i, i, m)
        else_form = app(m, i, i, i, n)
        rows.append(
            IteCheck(
                m_name,
                n_name,
                _passes_through(logic.ite(ti, m, n), then_form, fuel, env),
                _reaches(then_form, m, fuel, env),
                _passes_through(logic.ite(fi, m, n), else_form, fuel, env),
                _reaches(else_form, n, fuel, env),
            )
        )
    return rows


# =========================
# λI truth tables
# =========================
# Cells where the λI encoding differs from the published left-sequential
# tables: F_I M N reduces to M I I I N, so the then-branch is evaluated even
# when the condition is false (and T_I M N evaluates the else-branch).
LAMBDA_I_DEVIATIONS: Dict[Tuple[str, int, Tuple[str, ...]], str] = {
    ("conj", 3, ("F", "Bot")): "Bot",
    ("disj", 3, ("T", "Bot")): "Bot",
    ("impl", 3, ("F", "Bot")): "Bot",
    ("conj", 4, ("F", "HA")): "HA",
    ("conj", 4, ("F", "D")): "D",
    ("disj", 4, ("T", "HA")): "HA",
    ("disj", 4, ("T", "D")): "D",
}


def truth_table_i(connective: str, arity: int = 3, fuel: int = DEFAULT_FUEL) -> logic.TruthTable:
    if arity not in LAMBDA_I_ARITIES:
        raise LambdaIError(f"no λI encoding for arity {arity} (the O class has no λI representative)")
    for v in logic.DOMAINS[arity]:
        ensure_lambda_i(logic.encode_value(v, "lambda-i"))
    return logic.truth_table(connective, arity, "lambda-i", fuel)


@dataclass(frozen=True)
class LambdaITableCheck:
    connective: str
    arity: int
    table: logic.TruthTable
    documented: Tuple[logic.CellMismatch, ...]
    undocumented: Tuple[logic.CellMismatch, ...]
    missing: Tuple[Tuple[str, ...], ...]  # documented deviations that did not show up

    @property
    def ok(self) -> bool:
        return not self.undocumented and not self.missing


def check_truth_table_i(connective: str, arity: int = 3, fuel: int = DEFAULT_FUEL) -> LambdaITableCheck:
    if (connective, arity) not in logic.REFERENCE_TABLES:
        raise ValueError(f"no published {connective} table for arity {arity}")
    table = truth_table_i(connective, arity, fuel)
    documented, undocumented = [], []
    seen = set()
    for mm in logic.compare_to_reference(table):
        expected = LAMBDA_I_DEVIATIONS.get((connective, arity, mm.cell))
        if expected == mm.computed:
            documented.append(mm)
            seen.add(mm.cell)
        else:
            undocumented.append(mm)
    missing = tuple(
        cell for (c, a, cell) in LAMBDA_I_DEVIATIONS if c == connective and a == arity and cell not in seen
    )
    if documented:
        logger.debug("λI %s arity %d: %d documented deviations", connective, arity, len(documented))
    return LambdaITableCheck(connective, arity, table, tuple(documented), tuple(undocumented), missing)
