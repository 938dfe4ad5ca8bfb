import dataclasses

import pytest
from hypothesis import assume, given, settings

from conftest import rename_bound, terms

from mccarthy.errors import DefinitionError, ResolutionError
from mccarthy.syntax import parse_term
from mccarthy.terms import (
    LIBRARY,
    DefEnv,
    App,
    Lam,
    Ref,
    Var,
    alpha_eq,
    app,
    canonicalize,
    expand,
    free_vars,
    fresh_name,
    lam,
    resolve_head,
    substitute,
    unwind,
)


def test_cached_fields():
    t = lam("x", App(Var("x"), Var("y")))
    assert t.free == frozenset({"y"})
    assert t.size == 4
    assert app(Ref("K"), Var("a")).refs == frozenset({"K"})


def test_fresh_name_suffixes():
    assert fresh_name("y", {"y", "y1"}) == "y2"
    assert fresh_name("y3", {"y3"}) == "y1"


def test_substitute_avoids_capture():
    body = lam("y", App(Var("x"), Var("y")))
    out = substitute(body, "x", Var("y"))
    assert out == Lam("y1", App(Var("y"), Var("y1")))


def test_substitute_skips_when_not_free():
    body = lam("x", Var("x"))
    assert substitute(body, "x", Var("z")) is body


def test_unwind():
    f, a, b = Var("f"), Var("a"), Var("b")
    assert unwind(app(f, a, b)) == (f, [a, b])


def test_alpha_eq():
    assert alpha_eq(parse_term("\\x. x"), parse_term("\\y. y"))
    assert not alpha_eq(parse_term("\\x y. x"), parse_term("\\x y. y"))
    # Refs are compared by their definitions
    assert alpha_eq(Ref("K"), parse_term("\\a b. a"))
    assert not alpha_eq(Var("x"), Var("y"))


def test_canonical_digest_ignores_names():
    a = canonicalize(parse_term("\\x. x (\\y. y x)"))
    b = canonicalize(parse_term("\\p. p (\\q. q p)"))
    assert a == b
    assert a.digest == b.digest


def test_resolve_head_unfolds_refs():
    t = resolve_head(App(Ref("K"), Var("a")))
    assert isinstance(t, App) and isinstance(t.fun, Lam)


def test_expand_removes_refs():
    t = expand(Ref("OMEGA"))
    assert not t.refs
    assert t == App(lam("x", App(Var("x"), Var("x"))), lam("x", App(Var("x"), Var("x"))))


def test_define():
    env = LIBRARY.define("D2", parse_term("\\x. x x"))
    assert "D2" in env
    assert env.resolve("D2") == lam("x", App(Var("x"), Var("x")))
    assert "D2" not in LIBRARY


def test_define_rejects_bad_definitions():
    with pytest.raises(DefinitionError):
        LIBRARY.define("K", parse_term("\\x. x"))
    with pytest.raises(DefinitionError):
        LIBRARY.define("Open", parse_term("\\x. y"))
    with pytest.raises(DefinitionError):
        LIBRARY.define("Later", App(Ref("Nope"), Ref("I")))
    env = LIBRARY.define("A", parse_term("I"))
    with pytest.raises(DefinitionError):
        env.define("A", parse_term("K"))


def test_resolve_unknown():
    with pytest.raises(ResolutionError):
        LIBRARY.resolve("Nope")


def test_env_is_plain_data():
    assert [f.name for f in dataclasses.fields(DefEnv)] == ["defs", "library"]
    t = parse_term("\\x. x THETA")
    first = canonicalize(t)
    assert canonicalize(t) == first
    assert set(vars(LIBRARY)) == {"defs", "library"}


@settings(max_examples=200, deadline=None)
@given(terms, terms)
def test_alpha_eq_iff_same_canonical_form(a, b):
    assert alpha_eq(a, b) == (canonicalize(a) == canonicalize(b))
    renamed = rename_bound(a)
    assert alpha_eq(a, renamed) == (canonicalize(a) == canonicalize(renamed))


@settings(max_examples=200, deadline=None)
@given(terms)
def test_canonical_form_ignores_binder_names(t):
    renamed = rename_bound(t)
    assert canonicalize(renamed) == canonicalize(t)
    assert canonicalize(renamed).digest == canonicalize(t).digest
    assert alpha_eq(renamed, t)


@settings(max_examples=200, deadline=None)
@given(terms, terms, terms)
def test_substitution_lemma(t, a, b):
    assume("x" not in free_vars(b))
    lhs = substitute(substitute(t, "x", a), "y", b)
    rhs = substitute(substitute(t, "y", b), "x", substitute(a, "y", b))
    assert alpha_eq(lhs, rhs)
