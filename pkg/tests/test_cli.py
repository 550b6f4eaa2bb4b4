import json

import pytest

from fuzzygh import TNorm, make_standard_space, make_stationary_space
from fuzzygh.cli import main
from fuzzygh.io import save_space


@pytest.fixture
def std3(tmp_path):
    sp = make_standard_space(
        ["a", "b", "c"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], TNorm.product(), name="std3"
    )
    path = tmp_path / "std3.json"
    save_space(sp, path)
    return str(path)


@pytest.fixture
def std3min(tmp_path):
    sp = make_standard_space(
        ["a", "b", "c"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], TNorm.minimum(), name="std3min"
    )
    path = tmp_path / "std3min.json"
    save_space(sp, path)
    return str(path)


@pytest.fixture
def half(tmp_path):
    sp = make_stationary_space(["x1", "x2"], [[1, 0.5], [0.5, 1]], TNorm.product(), name="half")
    path = tmp_path / "half.json"
    save_space(sp, path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_check_pass(capsys, std3):
    code, doc = run(capsys, "check", "--space", std3)
    assert code == 0
    assert doc["report"]["passed"]


def test_check_na1_failure_exits_one(capsys, std3min):
    code, doc = run(capsys, "check", "--space", std3min)
    assert code == 1
    assert not doc["report"]["na1"]
    assert doc["report"]["witness"] is not None


def test_missing_file_exits_two(capsys, tmp_path):
    code = main(["check", "--space", str(tmp_path / "nope.json")])
    assert code == 2


def test_malformed_document_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"points": ["a", "b"], "tnorm": "product"}), encoding="utf-8")
    assert main(["check", "--space", str(bad)]) == 2


def test_unknown_flag_exits_two(std3):
    assert main(["check", "--space", std3, "--bogus"]) == 2


def test_diam(capsys, std3):
    code, doc = run(capsys, "diam", "--space", std3, "--t", "1.0")
    assert code == 0
    assert doc["diameter"] == pytest.approx(1 / 3, abs=1e-12)


def test_hausdorff_verb(capsys, std3):
    code, doc = run(capsys, "hausdorff", "--space", std3, "--a", "a", "--b", "a,c", "--t", "1.0")
    assert code == 0
    assert doc["value"] == pytest.approx(1 / 3, abs=1e-12)


def test_tnorm_verb(capsys):
    code, doc = run(capsys, "tnorm", "--kind", "product")
    assert code == 0
    assert doc["tn1"]["holds"] is True
    code, doc = run(capsys, "tnorm", "--kind", "minimum")
    assert code == 0
    assert doc["tn1"]["holds"] is False


def test_net_and_cover(capsys, half):
    code, doc = run(capsys, "net", "--space", half, "--t", "0.5", "--eps", "0.1")
    assert code == 0
    assert doc["net"]["indices"] == [0, 1]
    code, doc = run(capsys, "cover", "--space", half, "--eps", "0.1", "--t", "0.5")
    assert code == 0
    assert doc["cover_number"] == 2


def test_glue_floor_violation_is_a_finding(capsys, half, tmp_path):
    floor_doc = tmp_path / "floor.json"
    floor_doc.write_text(json.dumps({"kind": "stationary", "c": 0.9}), encoding="utf-8")
    code, doc = run(capsys, "glue", "--left", half, "--right", half, "--floor", str(floor_doc))
    assert code == 1
    assert "floor" in doc["error"]


def test_glue_envelope(capsys, half):
    code, doc = run(capsys, "glue", "--left", half, "--right", half, "--floor-envelope", "--t", "1.0")
    assert code == 0
    assert doc["axioms"]["passed"]


def test_mdelta(capsys, half):
    code, doc = run(
        capsys, "mdelta", "--left", half, "--right", half, "--t", "1.0", "--eps", "0.1"
    )
    assert code == 0
    assert doc["hausdorff"] > 0.81


def test_gh_bounds_schema(capsys, half):
    code, doc = run(capsys, "gh-bounds", "--left", half, "--right", half, "--t", "1.0")
    assert code == 0
    assert {"t", "lower", "upper", "upper_slack", "witness"} <= set(doc)
    assert doc["lower"] <= doc["upper"] + doc["upper_slack"]


def test_example_verify_exits_zero(capsys):
    code, doc = run(capsys, "example", "no-cauchy", "--count", "4", "--verify")
    assert code == 0
    assert doc["verification"]["contradiction_confirmed"]


def test_pigeonhole_on_written_family(capsys, tmp_path):
    code, doc = run(
        capsys, "example", "no-cauchy", "--count", "4", "--out-dir", str(tmp_path / "fam")
    )
    assert code == 0
    code, doc = run(
        capsys,
        "pigeonhole",
        "--family",
        str(tmp_path / "fam"),
        "--t",
        "0.5",
        "--eps",
        "0.1",
        "--no-certify",
    )
    # the ratio condition fails for this family: a finding, exit 1
    assert code == 1
    assert not doc["ratio"]["passed"]
    assert len(doc["group"]) == 2


def test_bridge_verb(capsys, tmp_path):
    metrics = [[[0, 1.0], [1.0, 0]], [[0, 2.0], [2.0, 0]]]
    path = tmp_path / "metrics.json"
    path.write_text(json.dumps(metrics), encoding="utf-8")
    code, doc = run(capsys, "bridge", "--metrics", str(path), "--bound", "3.0")
    assert code == 0
    assert doc["report"]["passed"]


def test_reports_are_byte_identical(capsys, std3):
    main(["check", "--space", std3])
    first = capsys.readouterr().out
    main(["check", "--space", std3])
    second = capsys.readouterr().out
    assert first == second


def test_out_file(tmp_path, capsys, std3):
    out = tmp_path / "report.json"
    code = main(["check", "--space", std3, "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text(encoding="utf-8"))["report"]["passed"]
