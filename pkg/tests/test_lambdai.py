import pytest
from hypothesis import given, settings

from conftest import lambda_i_terms
from mccarthy.errors import LambdaIError
from mccarthy.lambdai import (
    LAMBDA_I_DEVIATIONS,
    LambdaIViolation,
    bot_normalize_i,
    check_lambda_i_ite,
    check_truth_table_i,
    ensure_lambda_i,
    is_lambda_i,
    truth_table_i,
    validate_lambda_i,
)
from mccarthy.reduce import NormalForm, normalize
from mccarthy.syntax import parse_term
from mccarthy.terms import App, Const, Ref, Var, alpha_eq, lam


def test_k_is_not_lambda_i():
    assert validate_lambda_i(parse_term("\\x y. x")) == [LambdaIViolation("b", "y")]
    assert not is_lambda_i(Ref("K"))
    assert is_lambda_i(parse_term("T_I"))
    assert is_lambda_i(parse_term("F_I"))
    assert is_lambda_i(parse_term("OMEGA"))


def test_stream_violation_path():
    stream = parse_term("\\v. THETA (\\x y z. x y) v")
    assert validate_lambda_i(stream) == [LambdaIViolation("bfabb", "z")]
    with pytest.raises(LambdaIError) as exc:
        ensure_lambda_i(stream)
    assert exc.value.violations == (LambdaIViolation("bfabb", "z"),)


def test_bot_normalize():
    with pytest.raises(LambdaIError):
        bot_normalize_i(parse_term("THETA K"))
    assert bot_normalize_i(parse_term("THETA K"), require_lambda_i=False) == Const("Bot")
    assert bot_normalize_i(parse_term("OMEGA")) == Const("Bot")
    assert bot_normalize_i(parse_term("\\x. x (I y)")) == lam("x", App(Var("x"), Var("y")))


@pytest.mark.parametrize("text", ["x OMEGA", "\\x. x OMEGA", "x (y OMEGA)", "\\x. x x (x OMEGA)"])
def test_bottom_argument_makes_whole_term_bottom(text):
    assert bot_normalize_i(parse_term(text)) == Const("Bot")


def test_ite_with_lambda_i_booleans():
    rows = check_lambda_i_ite()
    assert len(rows) == 4
    assert all(r.ok for r in rows)


def test_no_five_valued_encoding():
    with pytest.raises(LambdaIError):
        truth_table_i("conj", 5)


def test_documented_deviation_shows_up():
    chk = check_truth_table_i("conj", 3)
    assert chk.ok
    assert [mm.cell for mm in chk.documented] == [("F", "Bot")]
    assert chk.table.cells[("F", "Bot")] == "Bot"


@pytest.mark.parametrize("conn,arity", sorted({(c, a) for c, a, _ in LAMBDA_I_DEVIATIONS}))
def test_every_deviation_is_observed(conn, arity):
    chk = check_truth_table_i(conn, arity)
    assert chk.ok
    assert not chk.missing


@pytest.mark.parametrize("conn", ["neg", "conj", "disj", "impl"])
def test_two_valued_tables_match(conn):
    chk = check_truth_table_i(conn, 2)
    assert chk.ok
    assert not chk.documented


@settings(max_examples=150, deadline=None)
@given(lambda_i_terms)
def test_reducts_of_lambda_i_terms_stay_lambda_i(t):
    assert is_lambda_i(t)
    out = normalize(t, fuel=30, trace=True)
    for step in out.trace:
        assert is_lambda_i(step.term), step


@settings(max_examples=150, deadline=None)
@given(lambda_i_terms)
def test_normalizing_lambda_i_terms_normalize_innermost_too(t):
    normal = normalize(t, fuel=30)
    if not isinstance(normal, NormalForm):
        return
    inner = normalize(t, fuel=2000, strategy="innermost")
    assert isinstance(inner, NormalForm)
    assert alpha_eq(inner.term, normal.term)
