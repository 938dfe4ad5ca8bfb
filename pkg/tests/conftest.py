from __future__ import annotations

from hypothesis import strategies as st

from mccarthy.props import And, Implies, Ite, Not, Or, PConst
from mccarthy.terms import App, Lam, Ref, Var

NAMES = ("x", "y", "z")


def _term_leaves():
    return st.one_of(
        st.sampled_from(NAMES).map(Var),
        st.sampled_from(("I", "K", "T", "F")).map(Ref),
    )


def _term_nodes(children):
    return st.one_of(
        st.builds(Lam, st.sampled_from(NAMES), children),
        st.builds(App, children, children),
    )


# λ-terms of size <= 30 over x, y, z and a few library names.
terms = st.recursive(_term_leaves(), _term_nodes, max_leaves=10).filter(lambda t: t.size <= 30)


def _prop_nodes(children):
    return st.one_of(
        st.builds(Not, children),
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(Implies, children, children),
        st.builds(Ite, children, children, children),
    )


def _depth(p) -> int:
    if isinstance(p, PConst):
        return 0
    if isinstance(p, Not):
        return 1 + _depth(p.arg)
    if isinstance(p, Ite):
        return 1 + max(_depth(p.cond), _depth(p.then), _depth(p.orelse))
    return 1 + max(_depth(p.left), _depth(p.right))


# Closed finite propositions of depth <= 8 over T, F, Bot.
finite_props = st.recursive(
    st.sampled_from(("T", "F", "Bot")).map(PConst), _prop_nodes, max_leaves=12
).filter(lambda p: _depth(p) <= 8)


def rename_bound(t, suffix="_r"):
    """
    Rename every binder consistently. Free names never end in the suffix, so
    nothing is captured.
    """

    def go(node, m):
        if isinstance(node, Var):
            return Var(m.get(node.name, node.name))
        if isinstance(node, Lam):
            new = node.binder + suffix
            return Lam(new, go(node.body, {**m, node.binder: new}))
        if isinstance(node, App):
            return App(go(node.fun, m), go(node.arg, m))
        return node

    return go(t, {})


# Terms that often loop: a random term next to Ω.
looping_terms = st.one_of(
    terms.map(lambda t: App(t, Ref("OMEGA"))),
    terms.map(lambda t: App(Ref("OMEGA"), t)),
    terms,
)


def _lambda_i_nodes(children):
    def bind(body):
        if not body.free:
            return st.just(body)
        return st.sampled_from(sorted(body.free)).map(lambda x: Lam(x, body))

    return st.one_of(children.flatmap(bind), st.builds(App, children, children))


# λI-terms: every abstraction uses its variable.
lambda_i_terms = st.recursive(
    st.one_of(st.sampled_from(NAMES).map(Var), st.sampled_from(("I", "T_I", "F_I")).map(Ref)),
    _lambda_i_nodes,
    max_leaves=10,
).filter(lambda t: t.size <= 30)
