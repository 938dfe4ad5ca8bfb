from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Literal, Mapping, Optional, Set, Tuple, Union

from .errors import DefinitionError, ResolutionError

BotTag = Literal["Bot", "HA", "IL", "O", "D"]
BOT_TAGS: Tuple[BotTag, ...] = ("Bot", "HA", "IL", "O", "D")

TOKEN_CACHE_MAX = 50_000


# =========================
# Term AST
# =========================
# Every node carries its free variables, the Ref names it mentions and its
# size, computed once at construction from the children. Definitions are
# closed, so a Ref contributes no free variables.
@dataclass(frozen=True)
class Var:
    name: str
    free: FrozenSet[str] = field(init=False, repr=False, compare=False)
    refs: FrozenSet[str] = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "free", frozenset((self.name,)))
        object.__setattr__(self, "refs", frozenset())
        object.__setattr__(self, "size", 1)


@dataclass(frozen=True)
class Lam:
    binder: str
    body: "Term"
    free: FrozenSet[str] = field(init=False, repr=False, compare=False)
    refs: FrozenSet[str] = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "free", self.body.free - {self.binder})
        object.__setattr__(self, "refs", self.body.refs)
        object.__setattr__(self, "size", self.body.size + 1)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"
    free: FrozenSet[str] = field(init=False, repr=False, compare=False)
    refs: FrozenSet[str] = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        f, a = self.fun, self.arg
        object.__setattr__(self, "free", f.free | a.free if a.free else f.free)
        object.__setattr__(self, "refs", f.refs | a.refs if a.refs else f.refs)
        object.__setattr__(self, "size", f.size + a.size + 1)


@dataclass(frozen=True)
class Const:
    tag: BotTag
    free: FrozenSet[str] = field(init=False, repr=False, compare=False)
    refs: FrozenSet[str] = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.tag not in BOT_TAGS:
            raise ValueError(f"Bad bottom tag: {self.tag!r}")
        object.__setattr__(self, "free", frozenset())
        object.__setattr__(self, "refs", frozenset())
        object.__setattr__(self, "size", 1)


@dataclass(frozen=True)
class Ref:
    name: str
    free: FrozenSet[str] = field(init=False, repr=False, compare=False)
    refs: FrozenSet[str] = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "free", frozenset())
        object.__setattr__(self, "refs", frozenset((self.name,)))
        object.__setattr__(self, "size", 1)


Term = Union[Var, Lam, App, Const, Ref]


def lam(*parts: Union[str, Term]) -> Term:
    """
    lam("x", "y", body) -> λx.λy.body
    """
    *names, body = parts
    out = body
    for name in reversed(names):
        out = Lam(name, out)  # type: ignore[arg-type]
    return out  # type: ignore[return-value]


def app(fun: Term, *args: Term) -> Term:
    out = fun
    for a in args:
        out = App(out, a)
    return out


# =========================
# Spine helpers
# =========================
def unwind(t: Term) -> Tuple[Term, List[Term]]:
    """
    h a1 ... an -> (h, [a1, ..., an]), arguments in application order.
    """
    args: List[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def rebuild(head: Term, args: Iterable[Term]) -> Term:
    return app(head, *args)


def strip_lams(t: Term) -> Tuple[Tuple[str, ...], Term]:
    names: List[str] = []
    while isinstance(t, Lam):
        names.append(t.binder)
        t = t.body
    return tuple(names), t


def free_vars(t: Term) -> Set[str]:
    return set(t.free)


# =========================
# Fresh names + substitution
# =========================
_SUFFIX_RE = re.compile(r"^(.*?)(\d*)$")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """
    Smallest numeric suffix not in `avoid`: y -> y1, y2, ...; y3 -> y1, ...
    """
    taken = set(avoid)
    stem = _SUFFIX_RE.match(base).group(1) or base  # type: ignore[union-attr]
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


def substitute(body: Term, var: str, value: Term) -> Term:
    if var not in body.free:
        return body
    if isinstance(body, Var):
        return value
    if isinstance(body, App):
        head, args = unwind(body)
        return rebuild(substitute(head, var, value), [substitute(a, var, value) for a in args])
    if isinstance(body, Lam):
        x, inner = body.binder, body.body
        if x in value.free:
            x2 = fresh_name(x, value.free | inner.free | {var})
            inner = substitute(inner, x, Var(x2))
            x = x2
        return Lam(x, substitute(inner, var, value))
    return body


# =========================
# Definition environment
# =========================
@dataclass(frozen=True)
class DefEnv:
    defs: Mapping[str, Term]
    library: FrozenSet[str] = frozenset()

    def __contains__(self, name: object) -> bool:
        return name in self.defs

    def names(self) -> List[str]:
        return list(self.defs)

    def resolve(self, name: str) -> Term:
        try:
            return self.defs[name]
        except KeyError:
            raise ResolutionError(name) from None

    def define(self, name: str, term: Term) -> "DefEnv":
        if name in self.library:
            raise DefinitionError(f"Definition may not shadow library name {name!r}")
        if name in self.defs:
            raise DefinitionError(f"{name!r} is already defined")
        missing = sorted(r for r in term.refs if r not in self.defs)
        if missing:
            raise DefinitionError(f"Definition of {name!r} references undefined names: {', '.join(missing)}")
        if term.free:
            raise DefinitionError(
                f"Definition of {name!r} is not closed (free: {', '.join(sorted(term.free))})"
            )
        defs = dict(self.defs)
        defs[name] = term
        return DefEnv(MappingProxyType(defs), self.library)


def _library() -> DefEnv:
    x, y = Var("x"), Var("y")
    selfapp = lam("x", App(x, x))
    theta_half = lam("x", "y", App(y, app(x, x, y)))
    defs: Dict[str, Term] = {
        "K": lam("x", "y", x),
        "I": lam("x", x),
        "OMEGA": App(selfapp, selfapp),
        "THETA": App(theta_half, theta_half),
        "T": lam("x", "y", x),
        "F": lam("x", "y", y),
        "T_I": lam("x", "y", app(y, Ref("I"), Ref("I"), x)),
        "F_I": lam("x", app(x, Ref("I"), Ref("I"), Ref("I"))),
    }
    return DefEnv(MappingProxyType(defs), frozenset(defs))


LIBRARY = _library()

# Alternative spellings accepted by the parser.
ALIASES: Dict[str, str] = {"Ω": "OMEGA", "Θ": "THETA", "Omega": "OMEGA", "Theta": "THETA"}


def resolve_head(t: Term, env: DefEnv = LIBRARY) -> Term:
    """
    Unfold Refs sitting at the head of the application spine (free of charge).
    """
    head, args = unwind(t)
    if not isinstance(head, Ref):
        return t
    while isinstance(head, Ref):
        inner, more = unwind(env.resolve(head.name))
        head, args = inner, more + args
    return rebuild(head, args)


def expand(t: Term, env: DefEnv = LIBRARY) -> Term:
    """
    Inline every Ref (definitions only reference earlier names, so this stops).
    """
    if not t.refs:
        return t
    if isinstance(t, Ref):
        return expand(env.resolve(t.name), env)
    if isinstance(t, Lam):
        return Lam(t.binder, expand(t.body, env))
    if isinstance(t, App):
        head, args = unwind(t)
        return rebuild(expand(head, env), [expand(a, env) for a in args])
    return t


# =========================
# Canonical (nameless) forms
# =========================
# Prefix encoding: "λ" body | "@" fun arg | int (bound, distance to binder)
# | "v:name" (free) | "c:tag" | "n" (outer binder beyond the cut).
Token = Union[str, int]


@dataclass(frozen=True)
class NamelessTerm:
    tokens: Tuple[Token, ...]

    @cached_property
    def digest(self) -> bytes:
        return token_digest(self.tokens)


def token_digest(tokens: Tuple[Token, ...]) -> bytes:
    return hashlib.blake2b(repr(tokens).encode("utf-8"), digest_size=16).digest()


# Memo of nameless encodings of closed terms, keyed by (env, term) identity.
# DefEnv itself stays immutable; entries hold both objects so ids stay valid.
_TOKEN_MEMO: Dict[Tuple[int, int], Tuple[DefEnv, Term, Tuple[Token, ...]]] = {}


def _cached_tokens(env: DefEnv, t: Term) -> Optional[Tuple[Token, ...]]:
    hit = _TOKEN_MEMO.get((id(env), id(t)))
    if hit is not None and hit[0] is env and hit[1] is t:
        return hit[2]
    return None


def _store_tokens(env: DefEnv, t: Term, tokens: Tuple[Token, ...]) -> None:
    if len(_TOKEN_MEMO) >= TOKEN_CACHE_MAX:
        _TOKEN_MEMO.clear()
    _TOKEN_MEMO[(id(env), id(t))] = (env, t, tokens)


def _lookup(name: str, ctx: Tuple[str, ...], outer: Tuple[str, ...], cut: int) -> Token:
    for i in range(len(ctx) - 1, -1, -1):
        if ctx[i] == name:
            return len(ctx) - 1 - i
    for p in range(len(outer) - 1, -1, -1):
        if outer[p] == name:
            if p >= cut:
                return "n"
            return len(ctx) + (cut - 1 - p)
    return f"v:{name}"


def term_tokens(
    t: Term,
    env: DefEnv = LIBRARY,
    outer: Tuple[str, ...] = (),
    cut: Optional[int] = None,
) -> Tuple[Token, ...]:
    """
    Nameless prefix encoding of `t`. `outer` lists binders stripped off above
    `t` (innermost last); binders at positions >= `cut` encode as "n".
    """
    if not t.free:
        hit = _cached_tokens(env, t)
        if hit is not None:
            return hit
    cut_at = len(outer) if cut is None else cut
    out: List[Token] = []
    stack: List[Tuple[Term, Tuple[str, ...]]] = [(t, ())]
    while stack:
        node, ctx = stack.pop()
        if not node.free and node is not t:
            hit = _cached_tokens(env, node)
            if hit is not None:
                out.extend(hit)
                continue
        if isinstance(node, Var):
            out.append(_lookup(node.name, ctx, outer, cut_at))
        elif isinstance(node, Lam):
            out.append("λ")
            stack.append((node.body, ctx + (node.binder,)))
        elif isinstance(node, App):
            out.append("@")
            stack.append((node.arg, ctx))
            stack.append((node.fun, ctx))
        elif isinstance(node, Const):
            out.append(f"c:{node.tag}")
        else:
            out.extend(_ref_tokens(node.name, env))
    tokens = tuple(out)
    if not t.free:
        _store_tokens(env, t, tokens)
    return tokens


def _ref_tokens(name: str, env: DefEnv) -> Tuple[Token, ...]:
    return term_tokens(env.resolve(name), env)


def canonicalize(t: Term, env: DefEnv = LIBRARY) -> NamelessTerm:
    return NamelessTerm(term_tokens(t, env))


def alpha_eq(a: Term, b: Term, env: DefEnv = LIBRARY) -> bool:
    return term_tokens(a, env) == term_tokens(b, env)
