import json
import subprocess
import sys

import pytest

from gwalg.cli import (
    EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_USAGE, ScenarioError, bundled_scenarios, list_catalog,
    load_scenario, main, run_scenario, validate,
)


def write(tmp_path, text, name="s.scenario"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_bundled_weyl_g222_passes(capsys):
    path = next(p for p in bundled_scenarios() if p.name == "weyl_g222.scenario")
    assert main(["run", str(path)]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS" in out and "seed 2222" in out


def test_empty_check_list_passes(tmp_path, capsys):
    path = write(tmp_path, '{"name": "empty", "algebra": {"catalog": "weyl", "n": 1}, "checks": []}')
    assert main(["run", path]) == EXIT_PASS
    assert "(no checks)" in capsys.readouterr().out


def test_p_not_dividing_m_names_field(tmp_path, capsys):
    path = write(tmp_path, '{"algebra": {"catalog": "weyl", "n": 2},'
                           ' "group": {"type": "gmpn", "m": 4, "p": 3, "n": 2}, "checks": ["invariance"]}')
    assert main(["run", path]) == EXIT_USAGE
    assert "group.p" in capsys.readouterr().err


def test_unknown_keys_rejected():
    with pytest.raises(ScenarioError, match="unknown key"):
        validate(load_scenario('{"algebra": {"catalog": "weyl"}, "colour": 3}'))
    with pytest.raises(ScenarioError, match="algebra"):
        validate(load_scenario('{"algebra": {"catalog": "weyl", "rank": 3}}'))


def test_parse_error_reports_location():
    text = '# comment\n{\n  "name": "x",\n  "seed": ,\n}'
    with pytest.raises(ScenarioError) as info:
        load_scenario(text, "f.scenario")
    assert info.value.where.startswith("f.scenario:4:")


def test_expression_errors_name_the_field():
    with pytest.raises(ScenarioError, match=r"algebra.a\[0\]"):
        validate(load_scenario('{"algebra": {"n": 1, "a": ["h1 +* 2"], "sigma": ["shift"]}}'))


def test_explicit_presentation_and_substitution_maps():
    sc = validate(load_scenario('''{
      "algebra": {"n": 1, "a": ["h1^2 + 1"],
                  "sigma": [{"forward": {"h1": "h1 - 3"}, "inverse": {"h1": "h1 + 3"}}], "independent": true},
      "checks": ["relations", "embedding"], "samples": 5}'''))
    rep = run_scenario(sc)
    assert rep.statuses == ["pass", "pass"]


def test_bad_inverse_is_validation_error():
    with pytest.raises(ScenarioError, match="sigma"):
        validate(load_scenario('{"algebra": {"n": 1, "a": ["h1"],'
                               ' "sigma": [{"forward": {"h1": "h1 - 1"}, "inverse": {"h1": "h1 - 1"}}]}}'))


def test_nagata_named_automorphism():
    sc = validate(load_scenario('''{
      "algebra": {"n": 1, "variables": ["x", "y", "z"], "a": ["z"], "sigma": ["nagata"], "independent": true},
      "checks": ["relations"], "samples": 3}'''))
    assert run_scenario(sc).statuses == ["pass"]


def test_json_round_trip_and_determinism(capsys):
    path = str(next(p for p in bundled_scenarios() if p.name == "quantum_weyl.scenario"))
    assert main(["run", path, "--format", "json", "--seed", "9"]) == EXIT_PASS
    first = json.loads(capsys.readouterr().out)
    assert main(["run", path, "--format", "json", "--seed", "9"]) == EXIT_PASS
    second = json.loads(capsys.readouterr().out)
    assert first["seed"] == 9
    strip = lambda rep: [(r["name"], r["status"], r["detail"]) for r in rep["results"]]
    assert strip(first) == strip(second)


def test_text_and_json_agree(capsys):
    path = str(next(p for p in bundled_scenarios() if p.name == "weyl_integer_seed.scenario"))
    main(["run", path, "--format", "json"])
    statuses = [r["status"] for r in json.loads(capsys.readouterr().out)["results"]]
    main(["run", path])
    text = capsys.readouterr().out
    assert [line.split()[0].lower() for line in text.splitlines()[1:] if line.startswith("  ") and
            not line.startswith("      ")] == statuses


def test_check_filter_and_radius_override(capsys):
    path = str(next(p for p in bundled_scenarios() if p.name == "weyl_integer_seed.scenario"))
    assert main(["run", path, "--check", "submodules", "--radius", "2", "--format", "json"]) == EXIT_PASS
    rep = json.loads(capsys.readouterr().out)
    assert [r["name"] for r in rep["results"]] == ["tableaux.submodules"]
    closed = rep["results"][0]["detail"]["closed_sets"]
    assert [["1"], ["2"], ["3"]] in closed


def test_failing_check_exits_one(tmp_path):
    # sigma(h) = h has no infinite order, so the embedding cannot be built
    path = write(tmp_path, '{"algebra": {"n": 1, "a": ["h1"], "sigma": [{"forward": {}, "inverse": {}}]},'
                           ' "checks": ["embedding"]}')
    assert main(["run", path]) == EXIT_FAIL


def test_inconclusive_escalation(tmp_path, capsys):
    # (2, 2) needs two monoid steps from the supports; bound 1 cannot decide it
    text = ('{"algebra": {"catalog": "weyl", "n": 2}, "group": {"type": "gmpn", "m": 2, "p": 1, "n": 2},'
            ' "mode": "monoid", "bound": 1, "checks": ["generates_monoid"]}')
    path = write(tmp_path, text)
    assert main(["run", path, "--escalate"]) == EXIT_INCONCLUSIVE
    assert "INCONCLUSIVE" in capsys.readouterr().out
    assert main(["run", path]) == EXIT_PASS
    assert main(["run", path, "--bound", "4"]) == EXIT_FAIL


def test_list_catalog_contents():
    text = list_catalog()
    for name in ("weyl", "quantum_weyl", "quantum_plane", "torus_diffops", "nagata"):
        assert name in text
    assert "q^-1*(h_i - 1)" in text and "q*h_i" in text


def test_usage_error_exit_code():
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["run", "/nonexistent/file.scenario"]) == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gwalg", "list-catalog"], capture_output=True, text=True)
    assert proc.returncode == 0 and "torus_diffops" in proc.stdout


@pytest.mark.parametrize("path", bundled_scenarios(), ids=lambda p: p.stem)
def test_every_bundled_scenario_passes(path):
    assert main(["run", str(path)]) == EXIT_PASS
