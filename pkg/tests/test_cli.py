import io
import json
import os

from conerank.cli import EXIT_DIMENSION, EXIT_FLAGS, EXIT_OK, EXIT_PROBLEM, main

from conftest import DATA_DIR, make_document

PROBLEM = os.path.join(DATA_DIR, "demo_problem.json")


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_rank_table_reproduces_pooled_values():
    code, text = run(["rank", "--problem", PROBLEM])
    assert code == EXIT_OK
    lines = text.strip().splitlines()
    rows = [line.split() for line in lines[1:]]
    assert [(r[0], r[1]) for r in rows] == [
        ("a5", "5/5"),
        ("a1", "2/5"),
        ("a4", "2/5"),
        ("a2", "1/5"),
        ("a3", "1/5"),
    ]


def test_rank_single_judge_row():
    code, text = run(["rank", "--problem", PROBLEM, "--judges", "j1"])
    assert code == EXIT_OK
    rows = {line.split()[0]: line.split()[1] for line in text.strip().splitlines()[1:]}
    assert rows == {"a1": "2/5", "a2": "2/5", "a3": "3/5", "a4": "4/5", "a5": "5/5"}


def test_rank_json_is_parseable():
    code, text = run(["rank", "--problem", PROBLEM, "--output", "json"])
    assert code == EXIT_OK
    payload = json.loads(text)
    assert payload["order"][0] == "a5"
    assert payload["ranks"]["a5"] == {
        "value": 5,
        "of": 5,
        "witness": payload["ranks"]["a5"]["witness"],
    }
    assert set(payload["cone"]) == {"generators", "facet_normals"}


def test_classify_table():
    code, text = run(["classify", "--problem", PROBLEM, "--p", "0.8"])
    assert code == EXIT_OK
    assert "a5            neutral" in text
    assert "a1            non_advisable" in text


def test_classify_requires_p():
    code, _ = run(["classify", "--problem", PROBLEM])
    assert code == EXIT_FLAGS


def test_quantile_output():
    code, text = run(["quantile", "--problem", PROBLEM, "--p", "0.8", "--judges", "j1"])
    assert code == EXIT_OK
    assert "lower >= 4.91935" in text  # 11 / sqrt(5) along the unit ray
    assert "upper <= 6.70820" in text  # 15 / sqrt(5)


def test_cones_output():
    code, text = run(["cones", "--problem", PROBLEM])
    assert code == EXIT_OK
    assert "importance cone generators:" in text
    assert "(0.89443, 0.44721)" in text


def test_cones_json_round_trips():
    code, text = run(["cones", "--problem", PROBLEM, "--output", "json"])
    assert code == EXIT_OK
    payload = json.loads(text)
    assert len(payload["importance_cone"]["generators"]) == 2
    assert payload["acceptance_cone"]["facet_normals"] == payload["importance_cone"]["generators"]


def test_plot_svg_deterministic(tmp_path):
    args = ["plot", "--problem", PROBLEM, "--p", "0.8", "--bbox", "0,0,6,6"]
    code1, svg1 = run(args)
    code2, svg2 = run(args)
    assert code1 == code2 == EXIT_OK
    assert svg1 == svg2
    assert svg1.startswith("<svg")
    assert "polygon" in svg1


def test_plot_rejects_three_criteria(tmp_path):
    doc = make_document(
        ["c1", "c2", "c3"],
        ["a1", "a2"],
        [[1, 1, 1]],
        [[1, 2, 3], [3, 2, 1]],
    )
    path = tmp_path / "three.json"
    path.write_text(doc, encoding="utf-8")
    code, _ = run(["plot", "--problem", str(path), "--p", "0.5", "--bbox", "0,0,6,6"])
    assert code == EXIT_DIMENSION


def test_plot_requires_bbox():
    code, _ = run(["plot", "--problem", PROBLEM, "--p", "0.5"])
    assert code == EXIT_FLAGS


def test_plot_rejects_table_output():
    code, _ = run(
        ["plot", "--problem", PROBLEM, "--p", "0.5", "--bbox", "0,0,6,6", "--output", "table"]
    )
    assert code == EXIT_FLAGS


def test_bad_bbox_flag():
    code, _ = run(["plot", "--problem", PROBLEM, "--p", "0.5", "--bbox", "zero,0,6,6"])
    assert code == EXIT_FLAGS


def test_missing_problem_file():
    code, _ = run(["rank", "--problem", "/nonexistent/problem.json"])
    assert code == EXIT_PROBLEM


def test_invalid_problem_reports_location(tmp_path, capsys):
    doc = make_document(["c1", "c2"], ["a1"], [[2, -1]], [[1, 2]])
    path = tmp_path / "bad.json"
    path.write_text(doc, encoding="utf-8")
    code, _ = run(["rank", "--problem", str(path)])
    assert code == EXIT_PROBLEM
    assert "negative weight" in capsys.readouterr().err


def test_unknown_judge_id():
    code, _ = run(["rank", "--problem", PROBLEM, "--judges", "nope"])
    assert code == EXIT_PROBLEM


def test_unknown_verb():
    code, _ = run(["frobnicate", "--problem", PROBLEM])
    assert code == EXIT_FLAGS


def test_bad_p_value():
    code, _ = run(["classify", "--problem", PROBLEM, "--p", "1.0"])
    assert code == EXIT_FLAGS


def test_tolerance_env_override(monkeypatch):
    monkeypatch.setenv("CONERANK_TOLERANCE", "1e-7")
    code, text = run(["rank", "--problem", PROBLEM])
    assert code == EXIT_OK
    assert "a5" in text


def test_tolerance_env_invalid(monkeypatch):
    monkeypatch.setenv("CONERANK_TOLERANCE", "not-a-float")
    code, _ = run(["rank", "--problem", PROBLEM])
    assert code == EXIT_FLAGS
