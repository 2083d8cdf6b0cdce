import json

import pytest

from qhopf.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, AlgebraSpec, SpecError, main
from qhopf.constructions import builtin


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text", [
    "kac", "group:D8", "h_u:group:Q8", "h_u:kac", "dual:Z4:cocycle_t=1", "double:Z2:cocycle_t=1",
    "dual:Z3", "file:/tmp/x.json", "group:Q8@gauge=3", "h_u:kac@gauge=0",
])
def test_spec_round_trip(text):
    assert str(AlgebraSpec.parse(text)) == text
    assert AlgebraSpec.parse(str(AlgebraSpec.parse(text))) == AlgebraSpec.parse(text)


@pytest.mark.parametrize("text", [
    "", "kac2", "group:", "group:A5", "group:D8:cocycle_t=1", "dual:Q8:cocycle_t=1",
    "dual:Z4:t=1", "dual:Z4:cocycle_t=x", "lie:Z2", "kac@gauge=x", "file:",
])
def test_bad_specs(text):
    with pytest.raises(SpecError):
        AlgebraSpec.parse(text)


def test_validate_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", "kac")[0] == EXIT_OK
    code, out, _ = run(capsys, "validate", "group:Q8", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["ok"] is True
    obj = builtin("C[Z2]_u").to_json()
    obj["beta"] = [[0, {"conductor": 1, "coeffs": ["2/1"]}]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "validate", f"file:{path}")
    assert code == EXIT_MISMATCH
    assert "antipode-associator" in out and "FAIL" in out
    assert run(capsys, "validate", "group:A5")[0] == EXIT_PARSE
    assert run(capsys, "validate", f"file:{tmp_path / 'missing.json'}")[0] == EXIT_PARSE


def test_unknown_command_is_a_parse_error():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == EXIT_PARSE


def _row(out, dim):
    data = json.loads(out)
    (row,) = [r for r in data["rows"] if r["dim"] == dim]
    return [int(v["coeffs"][0].split("/")[0]) for v in row["values"]]


def test_indicators_examples(capsys):
    code, out, _ = run(capsys, "indicators", "h_u:kac", "--n-max", "8", "--format", "json")
    assert code == EXIT_OK
    assert _row(out, 2)[1:] == [-1, 0, 0, 0, -1, 0, 2]
    code, out, _ = run(capsys, "indicators", "group:D8", "--n-max", "8", "--format", "json")
    assert _row(out, 2)[1:] == [1, 0, 2, 0, 1, 0, 2]
    code, out, _ = run(capsys, "indicators", "dual:Z2:cocycle_t=1", "--n-max", "4")
    assert code == EXIT_OK
    assert "| 0 | -1 | 0 | 1 |" in out


def test_indicators_output_is_deterministic(capsys):
    first = run(capsys, "indicators", "dual:Z3:cocycle_t=2", "--n-max", "6", "--format", "json")
    second = run(capsys, "indicators", "dual:Z3:cocycle_t=2", "--n-max", "6", "--format", "json")
    assert first == second


def test_indicators_limits_and_budget(capsys):
    assert run(capsys, "indicators", "kac", "--n-max", "13")[0] == EXIT_PARSE
    assert run(capsys, "indicators", "kac", "--n-max", "0")[0] == EXIT_PARSE
    code, _, err = run(capsys, "--budget", "20", "indicators", "kac", "--gauge-seed", "1", "--n-max", "3")
    assert code == EXIT_BUDGET
    assert "hole" in err or "budget" in err


def test_budget_from_the_environment(capsys, monkeypatch):
    monkeypatch.setenv("QHOPF_BUDGET", "20")
    code, _, _ = run(capsys, "indicators", "kac", "--gauge-seed", "1", "--n-max", "3")
    assert code == EXIT_BUDGET


def test_regular_character_source(capsys):
    code, out, _ = run(capsys, "indicators", "group:Q8", "--n-max", "2", "--character-source", "regular",
                       "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert len(data["rows"]) == 1 and data["rows"][0]["dim"] == 8
    # nu_2 of the regular module = sum of dim * nu_2 over simples = 4 - 2
    assert data["rows"][0]["values"][1]["coeffs"] == ["2/1"]


def test_table6(capsys):
    code, out, _ = run(capsys, "table6")
    assert code == EXIT_OK
    assert out.splitlines()[2] == "| K | 1 | 0 | 0 | 0 | 1 | 0 | 2 |"
    code, out, _ = run(capsys, "table6", "--format", "json")
    data = json.loads(out)
    assert data["matches_expected"] is True and data["columns"] == list(range(2, 9))


def test_table6_after_a_gauge_twist(capsys):
    plain = run(capsys, "table6")
    twisted = run(capsys, "table6", "--gauge-seed", "3")
    assert twisted == plain


@pytest.mark.parametrize("spec, seeds", [("group:Z2", 10), ("kac", 5)])
def test_gauge_check(capsys, spec, seeds):
    code, out, _ = run(capsys, "gauge-check", spec, "--seeds", str(seeds), "--n-max", "5")
    assert code == EXIT_OK
    assert f"{5 * seeds}/{5 * seeds}" in out
