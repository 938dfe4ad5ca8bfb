import pytest
from hypothesis import given, settings

from conftest import finite_props
from mccarthy.errors import DefinitionError, PropSyntaxError, UnboundVariableError
from mccarthy.props import (
    EMPTY_REC_ENV,
    And,
    Implies,
    Ite,
    Not,
    Or,
    PConst,
    PVar,
    RecRef,
    compile_prop,
    direct_eval,
    eval_prop,
    format_prop,
    parse_prop,
    prop_vars,
    render_russell,
    russell_demo,
)
from mccarthy.syntax import format_term

PHI1 = "rec X = T /\\ X in X"
PHI2 = "rec X = T \\/ X in X"
NEG_LOOP = "rec X = ~X in X"
WHILE = "rec W = if a then T else (if b then W else W) in W"


def test_parse_precedence():
    x, y, z = PVar("x"), PVar("y"), PVar("z")
    assert parse_prop("x /\\ y \\/ z")[0] == Or(And(x, y), z)
    assert parse_prop("x \\/ y /\\ z")[0] == Or(x, And(y, z))
    assert parse_prop("~~x")[0] == Not(Not(x))
    assert parse_prop("x -> y \\/ z")[0] == Implies(x, Or(y, z))
    assert parse_prop("if x then T else _|_")[0] == Ite(x, PConst("T"), PConst("Bot"))
    assert parse_prop("_HA /\\ _D")[0] == And(PConst("HA"), PConst("D"))


def test_parse_rec():
    p, env = parse_prop(PHI1)
    assert p == RecRef("X")
    assert env.body("X") == And(PConst("T"), RecRef("X"))
    p, env = parse_prop("rec X = Y /\\ X and Y = ~X in Y")
    assert p == RecRef("Y")
    assert set(env.defs) == {"X", "Y"}


def test_parse_errors():
    with pytest.raises(PropSyntaxError):
        parse_prop("x /\\")
    with pytest.raises(DefinitionError):
        parse_prop("rec X = T and X = F in X")
    with pytest.raises(DefinitionError):
        parse_prop("Y")


def test_format_round_trip():
    for text in ["x /\\ y \\/ z", "~(x /\\ y)", "x -> y -> z", "(if a then T else F) /\\ b", PHI2]:
        p, env = parse_prop(text)
        assert parse_prop(format_prop(p, env)) == (p, env)
    assert format_prop(parse_prop("~(x /\\ y)")[0]) == "~(x /\\ y)"


def test_prop_vars():
    assert prop_vars(parse_prop("x /\\ (y \\/ x)")[0]) == frozenset({"x", "y"})
    p, env = parse_prop(WHILE)
    assert prop_vars(p, env) == frozenset({"a", "b"})


def test_compile_recursive_props():
    p, env = parse_prop(PHI2)
    assert format_term(compile_prop(p, env)) == "THETA (\\x. T T x)"
    p, env = parse_prop(PHI1)
    assert format_term(compile_prop(p, env)) == "THETA (\\x. T x T)"


def test_compile_connectives():
    p, _ = parse_prop("~x")
    assert format_term(compile_prop(p, assignment={"x": "T"})) == "T F T"
    p, _ = parse_prop("x -> F")
    assert format_term(compile_prop(p, assignment={"x": "HA"})) == "OMEGA F T"
    with pytest.raises(UnboundVariableError):
        compile_prop(p)


def test_eval_recursive_props():
    p, env = parse_prop(PHI2)
    assert eval_prop(p, env).value == "T"
    p, env = parse_prop(PHI1)
    assert eval_prop(p, env).value == "Bot"
    assert eval_prop(p, env, arity=5).value == "HA"
    p, env = parse_prop(NEG_LOOP)
    assert eval_prop(p, env).value == "Bot"
    assert eval_prop(p, env, arity=5).value == "IL"


def test_eval_is_left_sequential():
    p, _ = parse_prop("x /\\ y")
    assert eval_prop(p, assignment={"x": "F", "y": "Bot"}).value == "F"
    assert eval_prop(p, assignment={"x": "Bot", "y": "F"}).value == "Bot"


def test_direct_eval():
    p, env = parse_prop(PHI1)
    assert direct_eval(p, env).value == "Bot"
    p, env = parse_prop(PHI2)
    assert direct_eval(p, env).value == "T"
    p, env = parse_prop(WHILE)
    assert direct_eval(p, env, {"a": "T", "b": "Bot"}).value == "T"
    assert direct_eval(p, env, {"a": "F", "b": "F"}).value == "Bot"


@pytest.mark.parametrize("a", ["T", "F", "Bot"])
@pytest.mark.parametrize("b", ["T", "F", "Bot"])
def test_while_loop_agrees_with_oracle(a, b):
    p, env = parse_prop(WHILE)
    asg = {"a": a, "b": b}
    assert eval_prop(p, env, asg).value == direct_eval(p, env, asg).value


@pytest.mark.parametrize("text", [PHI1, PHI2, NEG_LOOP])
def test_rational_props_agree_with_oracle(text):
    p, env = parse_prop(text)
    assert eval_prop(p, env).value == direct_eval(p, env).value


@settings(max_examples=200, deadline=None)
@given(finite_props)
def test_finite_props_agree_with_oracle(p):
    assert eval_prop(p).value == direct_eval(p, EMPTY_REC_ENV).value


def test_russell():
    report = russell_demo()
    assert report.verdict.category == "IL"
    assert report.value.value == "Bot"
    assert len(report.trace) == 4
    lines = render_russell(report)
    assert lines[0] == "P = (\\p. p p F T) (\\p. p p F T)"
    assert lines[-1] == "R in R is _|_: neither true nor false, not a contradiction"
    assert "verdict: Unsolvable(IL)" in lines
    assert "Bohm tree: _|_" in lines
