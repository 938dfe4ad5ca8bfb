import pytest
from hypothesis import given, settings

from conftest import terms
from mccarthy.errors import DefinitionError, ResolutionError, TermSyntaxError
from mccarthy.syntax import format_term, parse_script, parse_term
from mccarthy.terms import App, Const, Lam, Ref, Var, lam


def test_parse_basic_forms():
    x, y, z = Var("x"), Var("y"), Var("z")
    assert parse_term("\\x y. x") == lam("x", "y", x)
    assert parse_term("x y z") == App(App(x, y), z)
    assert parse_term("x \\y. y") == App(x, Lam("y", y))
    assert parse_term("λx. x") == Lam("x", x)


def test_parse_refs_and_aliases():
    assert parse_term("Ω") == Ref("OMEGA")
    assert parse_term("Theta") == Ref("THETA")
    assert parse_term("T_I") == Ref("T_I")


def test_parse_bottoms():
    assert parse_term("_|_") == Const("Bot")
    assert parse_term("⊥") == Const("Bot")
    assert parse_term("_D y") == App(Const("D"), Var("y"))


def test_parse_errors():
    with pytest.raises(TermSyntaxError):
        parse_term("\\x. ")
    with pytest.raises(TermSyntaxError):
        parse_term("(x y")
    with pytest.raises(ResolutionError):
        parse_term("NOPE")
    assert parse_term("NOPE", env=None) == Ref("NOPE")


def test_format():
    assert format_term(parse_term("(\\x. x x) (\\x. x x)")) == "(\\x. x x) (\\x. x x)"
    assert format_term(parse_term("x (y z) (\\w. w)")) == "x (y z) (\\w. w)"
    assert format_term(Ref("OMEGA"), unicode=True) == "Ω"
    assert format_term(parse_term("\\x. _|_"), unicode=True) == "λx. ⊥"


def test_format_marks_redex():
    assert format_term(parse_term("(\\x. x) y"), mark="") == "[(\\x. x) y]"
    assert format_term(parse_term("(\\x. x) y z"), mark="f") == "[(\\x. x) y] z"
    assert format_term(parse_term("z ((\\x. x) y)"), mark="a") == "z [(\\x. x) y]"


@settings(max_examples=200, deadline=None)
@given(terms)
def test_print_then_parse(t):
    assert parse_term(format_term(t), env=None) == t


def test_script():
    env, query = parse_script("A = \\x. x\nB = A A   # uses A\n\nB\n")
    assert "A" in env and "B" in env
    assert query == Ref("B")


def test_script_without_query():
    env, query = parse_script("A = \\x. x\n")
    assert query is None and "A" in env


def test_script_errors():
    with pytest.raises(DefinitionError):
        parse_script("K = \\x. x\n")
    with pytest.raises(DefinitionError):
        parse_script("A = B\nB = \\x. x\n")
    with pytest.raises(DefinitionError):
        parse_script("I\nI\n")
    with pytest.raises(TermSyntaxError):
        parse_script("A = \\x.\n")
