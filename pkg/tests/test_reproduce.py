from mccarthy.reproduce import ZOO, render, report_to_json, run_all, run_closure, run_zoo


def test_zoo_matches_expectations():
    rows = run_zoo()
    assert len(rows) == len(ZOO)
    bad = [(r.label, r.verdict) for r in rows if not r.ok]
    assert not bad


def test_closure_keeps_class():
    rows = run_closure()
    assert len(rows) == 36
    assert all(r.ok for r in rows)


def test_run_all_passes_and_is_deterministic():
    first = run_all()
    assert first.ok, [s.title for s in first.sections if not s.ok]
    text = render(first)
    assert text.endswith("all golden comparisons pass\n")
    assert render(run_all()) == text
    data = report_to_json(first)
    assert data["ok"] is True
    assert [s["title"] for s in data["sections"]][0] == "Truth tables"


def test_flagged_cell_uses_value_labels():
    tables = run_all().sections[0]
    assert tables.title == "Truth tables"
    assert "flagged (T, _D): printed _IL, computed _D" in tables.lines
    assert not any("('" in line for line in tables.lines)
