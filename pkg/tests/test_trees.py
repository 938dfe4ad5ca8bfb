import pytest

from mccarthy import logic
from mccarthy.reproduce import ZOO
from mccarthy.syntax import parse_term
from mccarthy.trees import (
    Bot,
    Cut,
    Head,
    LamStream,
    berarducci_tree,
    bohm_tree,
    levy_longo_tree,
    refines,
    render_tree,
    tree_to_json,
)


def test_bohm_tree_of_omega():
    assert bohm_tree(parse_term("OMEGA")) == Bot("Bot")
    assert render_tree(bohm_tree(parse_term("OMEGA"))) == "_|_"
    assert render_tree(bohm_tree(parse_term("OMEGA")), unicode=True) == "⊥"


def test_berarducci_tree_keeps_untouched_argument():
    t = berarducci_tree(parse_term("OMEGA I"))
    assert t == Head((), Bot("Bot"), (Head(("x",), "x", ()),))
    assert render_tree(t) == "_|_ (\\x. x)"
    assert levy_longo_tree(parse_term("OMEGA I")) == Bot("Bot")


@pytest.mark.parametrize("depth", [1, 4, 7])
def test_levy_longo_tree_of_theta_k_is_a_lambda_stream(depth):
    t = levy_longo_tree(parse_term("THETA K"), depth=depth)
    assert t == LamStream(("y",) * depth, Cut("depth"))


def test_levy_longo_rendering():
    assert render_tree(levy_longo_tree(parse_term("THETA K"), depth=3)) == "\\y y y. ..."
    assert render_tree(levy_longo_tree(parse_term("\\x. OMEGA"))) == "\\x. _|_"


@pytest.mark.parametrize("depth", [1, 3, 6])
def test_bohm_tree_of_theta_x_is_a_spine(depth):
    t = bohm_tree(parse_term("THETA x"), depth=depth)
    for _ in range(depth):
        assert isinstance(t, Head) and t.head == "x" and len(t.children) == 1
        t = t.children[0]
    assert t == Cut("depth")


def test_bohm_tree_rendering():
    assert render_tree(bohm_tree(parse_term("THETA x"), depth=3)) == "x (x (x ...))"
    assert render_tree(bohm_tree(parse_term("\\x y. y x"))) == "\\x y. y x"
    assert render_tree(bohm_tree(parse_term("\\x. x OMEGA"))) == "\\x. x _|_"


def test_unsolvables_collapse_in_bohm_trees():
    for text in ("THETA K", "THETA (\\x. x I)", "\\x. OMEGA"):
        assert bohm_tree(parse_term(text)) == Bot("Bot")


def test_berarducci_tree_of_growing_spine():
    t = berarducci_tree(parse_term("THETA (\\x. x y)"), depth=3)
    assert isinstance(t, Head)
    assert t.head == Cut("depth")
    assert all(c == Head((), "y", ()) for c in t.children)


def test_refines():
    assert refines(Bot("Bot"), Head(("x",), "x", ()))
    assert refines(Head(("x",), Bot("Bot"), ()), Head(("x",), "x", ()))
    assert not refines(Head(("x",), "x", ()), Bot("Bot"))
    assert refines(Cut("depth"), Bot("Bot"))
    bohm = bohm_tree(parse_term("\\x. OMEGA"))
    lazy = levy_longo_tree(parse_term("\\x. OMEGA"))
    assert refines(bohm, lazy)
    assert not refines(lazy, bohm)


@pytest.mark.parametrize("label,text,expected", ZOO)
def test_tree_ordering_across_the_zoo(label, text, expected):
    t = parse_term(text)
    b = bohm_tree(t, depth=4, fuel=200)
    ll = levy_longo_tree(t, depth=4, fuel=200)
    be = berarducci_tree(t, depth=4, fuel=200)
    assert refines(b, ll)
    assert refines(ll, be)


def test_tree_json():
    j = tree_to_json(berarducci_tree(parse_term("OMEGA I")))
    assert j["node"] == "head"
    assert j["head"] == {"node": "bot", "tag": "Bot"}
    assert j["children"][0]["head"] == "x"
    assert tree_to_json(Cut("fuel")) == {"node": "cut", "reason": "fuel"}


def _image(connective, u):
    rep = logic.encode_value(u)
    if connective == "neg":
        return logic.neg(rep)
    return getattr(logic, connective)(rep, logic.encode_value("T"))


@pytest.mark.parametrize("connective", ["neg", "conj", "disj"])
@pytest.mark.parametrize("u", ["HA", "IL", "O"])
def test_berarducci_shape_of_connective_images(connective, u):
    t = berarducci_tree(_image(connective, u), depth=4, fuel=500)
    if u == "HA":
        assert isinstance(t, Head) and t.head == Bot("Bot") and t.children
    elif u == "IL":
        assert isinstance(t, Head) and t.head == Cut("depth") and t.children
    else:
        assert isinstance(t, LamStream)
    assert bohm_tree(_image(connective, u), depth=4, fuel=500) == Bot("Bot")
