from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Literal, Sequence, Tuple, Union

from .classify import DEFAULT_CLASSIFY_DEPTH, Solvable, Unsolvable, classify
from .reduce import DEFAULT_FUEL, CycleDetected, FuelExhausted, beta_step_at, weak_head_redex, whnf_search
from .syntax import BOT_ASCII, BOT_UNICODE
from .terms import LIBRARY, BotTag, Const, DefEnv, Lam, Term, Var, resolve_head, unwind

logger = logging.getLogger(__name__)

DEFAULT_TREE_DEPTH = 16


# =========================
# Tree nodes
# =========================
@dataclass(frozen=True)
class Cut:
    reason: Literal["depth", "fuel", "unknown"]


@dataclass(frozen=True)
class Bot:
    tag: BotTag = "Bot"


@dataclass(frozen=True)
class Head:
    """
    λbinders.head children. The head is a variable name, a Bot (root-active
    head) or a Cut (left spine that goes on forever).
    """
    binders: Tuple[str, ...]
    head: Union[str, Bot, Cut]
    children: Tuple["TreeNode", ...] = ()


@dataclass(frozen=True)
class LamStream:
    binders: Tuple[str, ...]
    rest: Cut


TreeNode = Union[Head, Bot, LamStream, Cut]


def _under(binders: Sequence[str], node: TreeNode) -> TreeNode:
    if not binders:
        return node
    if isinstance(node, Bot):
        return Head(tuple(binders), node, ())
    return LamStream(tuple(binders), node)  # type: ignore[arg-type]


# =========================
# Böhm trees: unsolvable ↦ ⊥
# =========================
def bohm_tree(
    t: Term,
    depth: int = DEFAULT_TREE_DEPTH,
    fuel: int = DEFAULT_FUEL,
    env: DefEnv = LIBRARY,
) -> TreeNode:
    if depth <= 0:
        return Cut("depth")
    v = classify(t, fuel, DEFAULT_CLASSIFY_DEPTH, env)
    if isinstance(v, Unsolvable):
        return Bot("Bot")
    if not isinstance(v, Solvable):
        return Cut("fuel" if v.reason == "FuelExhausted" else "unknown")
    children = tuple(bohm_tree(a, depth - 1, fuel, env) for a in v.args)
    return Head(v.binders, v.head, children)


# =========================
# Lévy-Longo / Berarducci: abstractions come out one at a time
# =========================
def levy_longo_tree(
    t: Term,
    depth: int = DEFAULT_TREE_DEPTH,
    fuel: int = DEFAULT_FUEL,
    env: DefEnv = LIBRARY,
) -> TreeNode:
    """
    No weak head normal form ↦ ⊥.
    """
    return _lazy_tree(t, depth, fuel, env, berarducci=False)


def berarducci_tree(
    t: Term,
    depth: int = DEFAULT_TREE_DEPTH,
    fuel: int = DEFAULT_FUEL,
    env: DefEnv = LIBRARY,
) -> TreeNode:
    """
    Root-active ↦ ⊥. A root-active spine head keeps its untouched arguments;
    a growing left spine shows its outermost arguments under a cut head.
    """
    return _lazy_tree(t, depth, fuel, env, berarducci=True)


def _lazy_tree(t: Term, depth: int, fuel: int, env: DefEnv, berarducci: bool) -> TreeNode:
    if depth <= 0:
        return Cut("depth")
    binders: List[str] = []
    cur = t
    while True:
        out = whnf_search(cur, fuel, env)
        if isinstance(out, FuelExhausted):
            return _under(binders, Cut("fuel"))
        if isinstance(out, CycleDetected):
            if not berarducci or (out.growth == 0 and out.floor == 0):
                return _under(binders, Bot("Bot"))
            if out.growth == 0:
                _, args = unwind(resolve_head(out.last, env))  # type: ignore[arg-type]
                kids = tuple(_lazy_tree(a, depth - 1, fuel, env, True) for a in args[len(args) - out.floor:])
                return Head(tuple(binders), Bot("Bot"), kids)
            frozen = _frozen_spine(out, depth, env)
            kids = tuple(_lazy_tree(a, depth - 1, fuel, env, True) for a in frozen)
            return Head(tuple(binders), Cut("depth"), kids)

        form = resolve_head(out.term, env)
        head, args = unwind(form)
        if isinstance(head, Lam):
            if len(binders) >= depth:
                return LamStream(tuple(binders), Cut("depth"))
            binders.append(head.binder)
            cur = head.body
            continue
        kids = tuple(_lazy_tree(a, depth - 1, fuel, env, berarducci) for a in args)
        if isinstance(head, Var):
            return Head(tuple(binders), head.name, kids)
        if isinstance(head, Const):
            if not args:
                return _under(binders, Bot(head.tag))
            return Head(tuple(binders), Bot(head.tag), kids)
        raise AssertionError(f"unexpected weak head normal form {form!r}")


def _frozen_spine(out: CycleDetected, depth: int, env: DefEnv) -> List[Term]:
    """
    Outermost `depth` arguments of a growing left spine, running more loops
    when the detected state has too few of them.
    """
    wit_n = len(unwind(resolve_head(out.witness, env))[1])
    cur: Term = out.last  # type: ignore[assignment]
    args = unwind(resolve_head(cur, env))[1]
    prefix = wit_n - out.floor
    while len(args) - prefix < depth:
        for _ in range(out.loop_length):
            found = weak_head_redex(cur, env)
            if found is None:
                raise AssertionError("growing spine reached a weak head normal form")
            cur = beta_step_at(cur, found[0], env)
        args = unwind(resolve_head(cur, env))[1]
    logger.debug("left spine unrolled to %d arguments", len(args))
    return list(args[len(args) - depth:])


# =========================
# Ordering
# =========================
def refines(coarse: TreeNode, fine: TreeNode) -> bool:
    """
    True when `coarse` is `fine` with some subtrees replaced by ⊥. Cuts match
    anything.
    """
    if isinstance(coarse, Cut) or isinstance(fine, Cut):
        return True
    if isinstance(coarse, Bot):
        return True
    if isinstance(fine, Bot):
        return False
    if isinstance(coarse, LamStream) or isinstance(fine, LamStream):
        n = min(len(coarse.binders), len(fine.binders))
        return coarse.binders[:n] == fine.binders[:n]
    if coarse.binders != fine.binders:
        return False
    if isinstance(coarse.head, (Bot, Cut)):
        return not isinstance(fine.head, str) or isinstance(coarse.head, Cut)
    if coarse.head != fine.head or len(coarse.children) != len(fine.children):
        return False
    return all(refines(c, f) for c, f in zip(coarse.children, fine.children))


# =========================
# Rendering
# =========================
def render_tree(node: TreeNode, unicode: bool = False) -> str:
    lam_sym = "λ" if unicode else "\\"
    bots = BOT_UNICODE if unicode else BOT_ASCII

    def head_str(h: Union[str, Bot, Cut]) -> str:
        if isinstance(h, Bot):
            return bots[h.tag]
        if isinstance(h, Cut):
            return "..."
        return h

    def go(n: TreeNode) -> str:
        if isinstance(n, Cut):
            return "..."
        if isinstance(n, Bot):
            return bots[n.tag]
        if isinstance(n, LamStream):
            return f"{lam_sym}{' '.join(n.binders)}. ..."
        parts = [head_str(n.head)] + [atom(c) for c in n.children]
        body = " ".join(parts)
        if n.binders:
            return f"{lam_sym}{' '.join(n.binders)}. {body}"
        return body

    def atom(n: TreeNode) -> str:
        s = go(n)
        if isinstance(n, (Cut, Bot)) or (isinstance(n, Head) and not n.binders and not n.children):
            return s
        return f"({s})"

    return go(node)


def tree_to_json(node: TreeNode) -> dict:
    if isinstance(node, Cut):
        return {"node": "cut", "reason": node.reason}
    if isinstance(node, Bot):
        return {"node": "bot", "tag": node.tag}
    if isinstance(node, LamStream):
        return {"node": "lambda-stream", "binders": list(node.binders), "rest": tree_to_json(node.rest)}
    head = node.head if isinstance(node.head, str) else tree_to_json(node.head)
    return {
        "node": "head",
        "binders": list(node.binders),
        "head": head,
        "children": [tree_to_json(c) for c in node.children],
    }

