import json

import pytest

from mccarthy import logic
from mccarthy.cli import (
    EXIT_OK,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    UsageError,
    build_parser,
    cmd_reproduce,
    parse_assignment,
    run,
)


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


def test_parse_command(capsys):
    code, out, _ = _run(capsys, "parse", "\\x. x y")
    assert code == EXIT_OK
    assert out[0] == "\\x. x y"
    assert out[1] == "free: y"


def test_reduce_with_trace(capsys):
    code, out, _ = _run(capsys, "reduce", "(\\x. x) y", "--trace")
    assert code == EXIT_OK
    assert out == ["   [(\\x. x) y]", "-> y", "normal form after 1 steps: y"]


def test_reduce_json(capsys):
    code, out, _ = _run(capsys, "reduce", "T T F", "--json")
    assert code == EXIT_OK
    data = json.loads("\n".join(out))
    assert data["strategy"] == "normal"
    assert data["outcome"] == "normal-form"
    assert data["steps"] == 2


def test_fuel_exhausted_is_unknown(capsys):
    code, out, _ = _run(capsys, "reduce", "OMEGA", "--fuel", "0")
    assert code == EXIT_UNKNOWN
    assert out == ["fuel exhausted after 0 steps"]


def test_negative_fuel(capsys):
    code, _, err = _run(capsys, "reduce", "OMEGA", "--fuel", "-1")
    assert code == EXIT_USAGE
    assert "fuel" in err


def test_classify(capsys):
    code, out, _ = _run(capsys, "classify", "THETA K")
    assert code == EXIT_OK
    assert out[0] == "Unsolvable(O)"
    assert out[-1] == "  replayed: ok"


def test_syntax_error_is_usage(capsys):
    code, _, err = _run(capsys, "classify", "\\x.")
    assert code == EXIT_USAGE
    assert err.startswith("error:")


def test_unknown_command(capsys):
    code, _, _ = _run(capsys, "bogus")
    assert code == EXIT_USAGE


def test_trees(capsys):
    assert _run(capsys, "bohm", "OMEGA")[1] == ["_|_"]
    assert _run(capsys, "berarducci", "OMEGA I")[1] == ["_|_ (\\x. x)"]


def test_file_script(capsys, tmp_path):
    script = tmp_path / "id.lam"
    script.write_text("Id = \\x. x\nId y\n", encoding="utf-8")
    code, out, _ = _run(capsys, "reduce", "--file", str(script))
    assert code == EXIT_OK
    assert out == ["normal form after 1 steps: y"]
    code, _, _ = _run(capsys, "reduce", "--file", str(tmp_path / "missing.lam"))
    assert code == EXIT_USAGE


def test_table_five_values(capsys):
    code, out, _ = _run(capsys, "table", "conj", "--arity", "5")
    assert code == EXIT_OK
    assert "matches the published table" in out


def test_prop_eval(capsys):
    code, out, _ = _run(capsys, "prop", "eval", "rec X = ~X in X", "--arity", "3")
    assert code == EXIT_OK
    assert out == ["_|_"]
    code, out, _ = _run(capsys, "prop", "eval", "x /\\ y", "--assign", "x=F,y=_|_")
    assert out == ["F"]


def test_parse_assignment():
    assert parse_assignment("x=T, y=_|_") == {"x": "T", "y": "Bot"}
    assert parse_assignment(None) == {}
    with pytest.raises(UsageError):
        parse_assignment("x")
    with pytest.raises(UsageError):
        parse_assignment("x=maybe")


def test_axiom_equation(capsys):
    code, out, _ = _run(capsys, "axioms", "--equation", "GS(11)", "--arity", "4")
    assert code == EXIT_OK
    assert any("fails at x=_HA, y=_D: lhs _HA, rhs _D" in line for line in out)


def test_lambdai_normalize(capsys):
    code, _, _ = _run(capsys, "lambdai", "normalize", "THETA K")
    assert code == EXIT_USAGE
    code, out, _ = _run(capsys, "lambdai", "normalize", "THETA K", "--allow-non-i")
    assert code == EXIT_OK
    assert out == ["_|_"]


def test_lambdai_check(capsys):
    code, out, _ = _run(capsys, "lambdai", "check", "\\x y. x")
    assert code == EXIT_OK
    assert out == ["not a λI-term", "  \\y at b does not use its variable"]


def test_russell_and_zoo(capsys):
    code, out, _ = _run(capsys, "russell")
    assert code == EXIT_OK
    assert out[-1] == "R in R is _|_: neither true nor false, not a contradiction"
    code, out, _ = _run(capsys, "zoo")
    assert code == EXIT_OK
    assert not any("MISMATCH" in line for line in out)


def test_reproduce_alias():
    args = build_parser().parse_args(["reproduce-paper"])
    assert args.func is cmd_reproduce


def test_classify_text_and_json_agree(capsys):
    _, text, _ = _run(capsys, "classify", "THETA K")
    _, raw, _ = _run(capsys, "classify", "THETA K", "--json")
    data = json.loads("\n".join(raw))
    ev = data["evidence"]
    assert text[0] == f"{data['verdict']}({data['class']})"
    assert text[1] == f"  evidence: {ev['kind']}, loop {ev['loop_length']}, growth {ev['growth']}, floor {ev['floor']}"
    assert text[2] == f"  witness:  {ev['witness']}"
    assert data["replayed"] is True and text[-1] == "  replayed: ok"


def test_table_text_and_json_agree(capsys):
    _, text, _ = _run(capsys, "table", "conj", "--arity", "5")
    _, raw, _ = _run(capsys, "table", "conj", "--arity", "5", "--json")
    data = json.loads("\n".join(raw))
    by_label = {label: name for name, label in logic.LABELS.items() if name in logic.DOMAINS[5]}
    columns = [by_label[c] for c in text[0].split("|")[1].split()]
    from_text = {}
    for line in text[2 : 2 + len(columns)]:
        row, cells = line.split("|")
        for col, cell in zip(columns, cells.split()):
            from_text[(by_label[row.strip()], col)] = by_label[cell]
    from_json = {tuple(c["args"]): c["value"] for c in data["cells"]}
    assert from_text == from_json
    assert data["ok"] is True
    assert data["notes"] == text[2 + len(columns) :]
