from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from . import logic
from .classify import DEFAULT_CLASSIFY_DEPTH, Unknown, Verdict, classify, describe
from .errors import DefinitionError, PropSyntaxError, UnboundVariableError
from .logic import Style, TruthValue
from .reduce import DEFAULT_FUEL, TraceStep, normalize, render_trace
from .syntax import format_term
from .terms import App, Ref, Term, Var, fresh_name, lam
from .trees import DEFAULT_TREE_DEPTH, TreeNode, bohm_tree, render_tree

logger = logging.getLogger(__name__)

CONST_NAMES: Tuple[str, ...] = ("T", "F", "Bot", "HA", "IL", "O", "D")


# =========================
# Proposition AST
# =========================
@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PConst:
    value: str  # one of CONST_NAMES


@dataclass(frozen=True)
class Not:
    arg: "Prop"


@dataclass(frozen=True)
class And:
    left: "Prop"
    right: "Prop"


@dataclass(frozen=True)
class Or:
    left: "Prop"
    right: "Prop"


@dataclass(frozen=True)
class Implies:
    left: "Prop"
    right: "Prop"


@dataclass(frozen=True)
class Ite:
    cond: "Prop"
    then: "Prop"
    orelse: "Prop"


@dataclass(frozen=True)
class RecRef:
    name: str


Prop = Union[PVar, PConst, Not, And, Or, Implies, Ite, RecRef]


@dataclass(frozen=True)
class RecEnv:
    defs: Mapping[str, Prop] = field(default_factory=lambda: MappingProxyType({}))

    def __contains__(self, name: object) -> bool:
        return name in self.defs

    def body(self, name: str) -> Prop:
        try:
            return self.defs[name]
        except KeyError:
            raise DefinitionError(f"Undefined recursive name {name!r}") from None


EMPTY_REC_ENV = RecEnv()

Assignment = Mapping[str, Union[str, TruthValue]]


# =========================
# Grammar
# =========================
PROP_GRAMMAR = r"""
?start: expr

?expr: rec_expr
     | ite
     | impl

rec_expr: "rec" binding ("and" binding)* "in" expr
binding: RNAME "=" expr

ite: "if" expr "then" expr "else" expr

?impl: disj
     | impl "->" disj       -> implies

?disj: conj
     | disj "\\/" conj      -> or_

?conj: neg
     | conj "/\\" neg       -> and_

?neg: "~" neg               -> not_
    | atom

?atom: "T"                  -> true
     | "F"                  -> false
     | BOT                  -> bot
     | PVAR                 -> pvar
     | RNAME                -> recref
     | "(" expr ")"

PVAR: /[a-z][a-z0-9_]*/
RNAME: /[A-Z][A-Za-z0-9_]*/
BOT: "_|_" | "_HA" | "_IL" | "_O" | "_D" | "⊥"

COMMENT: /#[^\n]*/
%import common.WS
%ignore WS
%ignore COMMENT
"""

_BOT_VALUE: Dict[str, str] = {"_|_": "Bot", "⊥": "Bot", "_HA": "HA", "_IL": "IL", "_O": "O", "_D": "D"}

_PROP_PARSER = Lark(PROP_GRAMMAR, parser="lalr")


class _ToProp(Transformer):
    """
    Collects every rec binding into one environment; a name may be bound once.
    """

    def __init__(self) -> None:
        super().__init__()
        self.defs: Dict[str, Prop] = {}

    def true(self, _):
        return PConst("T")

    def false(self, _):
        return PConst("F")

    def bot(self, items):
        return PConst(_BOT_VALUE[str(items[0])])

    def pvar(self, items):
        return PVar(str(items[0]))

    def recref(self, items):
        return RecRef(str(items[0]))

    def not_(self, items):
        return Not(items[0])

    def and_(self, items):
        return And(items[0], items[1])

    def or_(self, items):
        return Or(items[0], items[1])

    def implies(self, items):
        return Implies(items[0], items[1])

    def ite(self, items):
        return Ite(items[0], items[1], items[2])

    def binding(self, items):
        name = str(items[0])
        if name in self.defs:
            raise DefinitionError(f"{name!r} is bound twice")
        self.defs[name] = items[1]
        return name

    def rec_expr(self, items):
        return items[-1]


def parse_prop(text: str) -> Tuple[Prop, RecEnv]:
    """
    Parse a proposition. All rec bindings end up in the returned environment.
    """
    try:
        tree = _PROP_PARSER.parse(text)
    except UnexpectedInput as e:
        raise PropSyntaxError(f"Cannot parse proposition {text!r}", e.line, e.column) from None
    tr = _ToProp()
    try:
        prop = tr.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, DefinitionError):
            raise e.orig_exc from None
        raise
    env = RecEnv(MappingProxyType(dict(tr.defs)))
    for name in sorted(_rec_refs(prop, env)):
        if name not in env:
            raise DefinitionError(f"Undefined recursive name {name!r}")
    return prop, env


def _children(p: Prop) -> Tuple[Prop, ...]:
    if isinstance(p, Not):
        return (p.arg,)
    if isinstance(p, (And, Or, Implies)):
        return (p.left, p.right)
    if isinstance(p, Ite):
        return (p.cond, p.then, p.orelse)
    return ()


def _rec_refs(p: Prop, env: RecEnv) -> FrozenSet[str]:
    found = set()
    stack: List[Prop] = [p, *env.defs.values()]
    while stack:
        q = stack.pop()
        if isinstance(q, RecRef):
            found.add(q.name)
        stack.extend(_children(q))
    return frozenset(found)


def prop_vars(p: Prop, env: RecEnv = EMPTY_REC_ENV) -> FrozenSet[str]:
    found = set()
    stack: List[Prop] = [p, *env.defs.values()]
    while stack:
        q = stack.pop()
        if isinstance(q, PVar):
            found.add(q.name)
        stack.extend(_children(q))
    return frozenset(found)


_PREC = {Implies: 1, Or: 2, And: 3}
_OPS = {Implies: "->", Or: "\\/", And: "/\\"}


def format_prop(p: Prop, env: RecEnv = EMPTY_REC_ENV) -> str:
    body = _fmt_prop(p, 0)
    if not env.defs:
        return body
    binds = " and ".join(f"{name} = {_fmt_prop(b, 0)}" for name, b in env.defs.items())
    return f"rec {binds} in {body}"


def _fmt_prop(p: Prop, ctx: int) -> str:
    if isinstance(p, PVar):
        return p.name
    if isinstance(p, RecRef):
        return p.name
    if isinstance(p, PConst):
        return logic.LABELS[p.value]
    if isinstance(p, Not):
        return "~" + _fmt_prop(p.arg, 4)
    if isinstance(p, Ite):
        s = f"if {_fmt_prop(p.cond, 0)} then {_fmt_prop(p.then, 0)} else {_fmt_prop(p.orelse, 0)}"
        return f"({s})" if ctx > 0 else s
    prec = _PREC[type(p)]
    s = f"{_fmt_prop(p.left, prec)} {_OPS[type(p)]} {_fmt_prop(p.right, prec + 1)}"  # type: ignore[union-attr]
    return f"({s})" if ctx > prec else s


# =========================
# Compilation to λ-terms
# =========================
def _rec_var_names(env: RecEnv) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for name in env.defs:
        v = name[0].lower() + name[1:]
        if v in out.values():
            v = fresh_name(v, out.values())
        out[name] = v
    return out


def _lookup_value(name: str, assignment: Optional[Assignment]) -> str:
    if assignment is None or name not in assignment:
        raise UnboundVariableError(name)
    v = assignment[name]
    return v.value if isinstance(v, TruthValue) else str(v)


def compile_prop(
    p: Prop,
    env: RecEnv = EMPTY_REC_ENV,
    assignment: Optional[Assignment] = None,
    style: Style = "church",
) -> Term:
    """
    Connectives become applications of booleans; each rec name X used outside
    its own definition becomes Θ(λx.⟦body⟧).
    """
    names = _rec_var_names(env)
    return _compile(p, env, assignment, style, names, frozenset())


def _compile(
    p: Prop,
    env: RecEnv,
    asg: Optional[Assignment],
    style: Style,
    names: Dict[str, str],
    bound: FrozenSet[str],
) -> Term:
    def go(q: Prop) -> Term:
        return _compile(q, env, asg, style, names, bound)

    if isinstance(p, PConst):
        return logic.encode_value(p.value, style)
    if isinstance(p, PVar):
        return logic.encode_value(_lookup_value(p.name, asg), style)
    if isinstance(p, Not):
        return logic.neg(go(p.arg), style)
    if isinstance(p, And):
        return logic.conj(go(p.left), go(p.right), style)
    if isinstance(p, Or):
        return logic.disj(go(p.left), go(p.right), style)
    if isinstance(p, Implies):
        return logic.impl(go(p.left), go(p.right), style)
    if isinstance(p, Ite):
        return logic.ite(go(p.cond), go(p.then), go(p.orelse))
    if isinstance(p, RecRef):
        var = names.get(p.name)
        if var is None:
            raise DefinitionError(f"Undefined recursive name {p.name!r}")
        if p.name in bound:
            return Var(var)
        body = _compile(env.body(p.name), env, asg, style, names, bound | {p.name})
        return App(Ref("THETA"), lam(var, body))
    raise TypeError(f"not a proposition: {p!r}")


def eval_prop(
    p: Prop,
    env: RecEnv = EMPTY_REC_ENV,
    assignment: Optional[Assignment] = None,
    arity: int = 3,
    style: Style = "church",
    fuel: int = DEFAULT_FUEL,
) -> Union[TruthValue, Unknown]:
    return logic.decode(compile_prop(p, env, assignment, style), arity, style, fuel)


# =========================
# Direct left-sequential evaluation (no λ-terms)
# =========================
def direct_eval(p: Prop, env: RecEnv = EMPTY_REC_ENV, assignment: Optional[Assignment] = None) -> TruthValue:
    """
    Three-valued evaluation, left argument first. A rec name that is entered
    again while it is still being evaluated can never produce a value: Bot.
    """
    return TruthValue(3, _direct(p, env, assignment, frozenset()))


def _as3(value: str) -> str:
    return value if value in ("T", "F") else "Bot"


def _direct(p: Prop, env: RecEnv, asg: Optional[Assignment], active: FrozenSet[str]) -> str:
    if isinstance(p, PConst):
        return _as3(p.value)
    if isinstance(p, PVar):
        return _as3(_lookup_value(p.name, asg))
    if isinstance(p, RecRef):
        if p.name in active:
            return "Bot"
        return _direct(env.body(p.name), env, asg, active | {p.name})
    if isinstance(p, Not):
        return {"T": "F", "F": "T"}.get(_direct(p.arg, env, asg, active), "Bot")
    if isinstance(p, Ite):
        c = _direct(p.cond, env, asg, active)
        if c == "Bot":
            return "Bot"
        return _direct(p.then if c == "T" else p.orelse, env, asg, active)
    left = _direct(p.left, env, asg, active)  # type: ignore[union-attr]
    if left == "Bot":
        return "Bot"
    if isinstance(p, And):
        return _direct(p.right, env, asg, active) if left == "T" else "F"
    if isinstance(p, Or):
        return "T" if left == "T" else _direct(p.right, env, asg, active)
    return _direct(p.right, env, asg, active) if left == "T" else "T"  # type: ignore[union-attr]


# =========================
# Random propositions (oracle runs)
# =========================
def random_prop(rng: random.Random, depth: int = 8, consts: Tuple[str, ...] = ("T", "F", "Bot")) -> Prop:
    """
    Random closed finite proposition of depth at most `depth`.
    """
    if depth <= 0 or rng.random() < 0.25:
        return PConst(rng.choice(consts))
    kind = rng.randrange(5)
    if kind == 0:
        return Not(random_prop(rng, depth - 1, consts))
    if kind == 4:
        return Ite(*(random_prop(rng, depth - 1, consts) for _ in range(3)))
    ctor = (And, Or, Implies)[kind - 1]
    return ctor(random_prop(rng, depth - 1, consts), random_prop(rng, depth - 1, consts))


# =========================
# Russell's paradox
# =========================
@dataclass(frozen=True)
class RussellReport:
    term: Term
    trace: Tuple[TraceStep, ...]
    verdict: Verdict
    tree: TreeNode
    value: Union[TruthValue, Unknown]


def russell_term(style: Style = "church") -> Term:
    """
    P = (λp.¬(p p))(λp.¬(p p)) with ¬ expanded.
    """
    p = Var("p")
    half = lam("p", logic.neg(App(p, p), style))
    return App(half, half)


def russell_demo(steps: int = 3, fuel: int = DEFAULT_FUEL) -> RussellReport:
    t = russell_term()
    out = normalize(t, steps, trace=True)
    verdict = classify(t, fuel, DEFAULT_CLASSIFY_DEPTH)
    tree = bohm_tree(t, DEFAULT_TREE_DEPTH, fuel)
    value = logic.decode(t, 3, "church", fuel)
    return RussellReport(t, out.trace, verdict, tree, value)


def render_russell(report: RussellReport, unicode: bool = False) -> List[str]:
    lines = ["P = " + format_term(report.term, unicode=unicode)]
    lines.extend(render_trace(report.trace, unicode).splitlines())
    lines.append(f"verdict: {describe(report.verdict)}")
    lines.append(f"Bohm tree: {render_tree(report.tree, unicode)}")
    lines.append(f"value (3-valued): {report.value}")
    bot = "⊥" if unicode else "_|_"
    lines.append(f"R in R is {bot}: neither true nor false, not a contradiction")
    return lines


__all__ = [
    "PVar", "PConst", "Not", "And", "Or", "Implies", "Ite", "RecRef", "Prop",
    "RecEnv", "EMPTY_REC_ENV",
    "parse_prop", "format_prop", "prop_vars",
    "compile_prop", "eval_prop", "direct_eval",
    "random_prop", "russell_term", "russell_demo", "render_russell",
]
