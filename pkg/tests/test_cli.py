import json

import pytest

from hhtate.cli import RunConfig, UsageError, main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("-2..2") == [-2, -1, 0, 1, 2]
    assert parse_range("1,3") == [1, 3]
    for bad in ("", "1..", "4..1", "a", "1...3"):
        with pytest.raises(UsageError):
            parse_range(bad)


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig("verify-extreme", genus=[0])
    with pytest.raises(UsageError):
        RunConfig("verify-extreme", genus=[1], budget=-3)


def test_verify_extreme_one(capsys):
    code, out, _ = run(capsys, "verify-extreme", "--genus", "1")
    assert code == 0
    assert "genus 1: pi-formal" in out and "step-1 formula matches" in out


@pytest.mark.parametrize("argv", [
    ["verify-extreme", "--genus", "1..x"],
    ["verify-extreme", "--genus", "0"],
    ["verify-genus2", "--weight", "3"],
    ["algebra-dump", "antipodal"],
    ["algebra-dump", "antipodal:1", "--weight", "2"],
    ["no-such-command"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_budget_exhaustion_is_a_failure(capsys):
    code, out, _ = run(capsys, "verify-extreme", "--genus", "2", "--budget", "1")
    assert code == 1 and "undecided" in out


def test_json_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify-extreme", "--genus", "1,2", "--json", str(a))[0] == 0
    assert run(capsys, "verify-extreme", "--genus", "1,2", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text(encoding="utf-8"))
    assert data["command"] == "verify-extreme" and data["all_pi_formal"]
    assert [r["genus"] for r in data["runs"]] == [1, 2]
    for r in data["runs"]:
        assert {"model", "steps", "trace", "status", "verdict", "flags", "hochschild"} <= set(r)
        assert r["trace"][-1] == 0


def test_json_to_stdout(capsys):
    code, out, _ = run(capsys, "smith", "trivial_point", "--json", "-")
    assert code == 0
    payload = json.loads(out[out.index("{"):])
    assert payload["complexes"][0]["tate_per_degree"] == 1


def test_verify_genus2_small_weights(capsys, tmp_path):
    out_path = tmp_path / "g2.json"
    code, out, _ = run(capsys, "verify-genus2", "--weight=-2..-1", "--json", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert [r["weight"] for r in data["runs"]] == [-2, -1]
    assert all(r["verdict"] == "pi-formal" for r in data["runs"])
    assert "golden_match" not in data


def test_no_internal_diff_fails_loudly(capsys):
    code, out, _ = run(capsys, "verify-genus2", "--weight", "0", "--no-internal-diff")
    assert code == 1
    assert "model-error" in out and "d^2" in out


def test_smith_corpus(capsys):
    code, out, _ = run(capsys, "smith")
    assert code == 0
    assert out.count(": pass") == 8
    assert "free_rotation_circle: Tate 0 per degree" in out


def test_smith_rejects_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"cells": {"0": ["a"], "1": ["e"]}, "boundary": {"1": [[0, 5]]}}')
    code, _, err = run(capsys, "smith", str(bad))
    assert code == 2 and "out of range" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"cells":\n  [')
    code, _, err = run(capsys, "smith", str(broken))
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "smith", str(tmp_path / "missing.json"))
    assert code == 2


@pytest.mark.parametrize("weight,dim", [("0", 8), ("-1", 1)])
def test_algebra_dump_genus1(capsys, weight, dim):
    code, out, _ = run(capsys, "algebra-dump", "antipodal:1", "--weight", weight)
    assert code == 0
    assert f"dimension {dim}," in out


def test_algebra_dump_json(capsys, tmp_path):
    p = tmp_path / "alg.json"
    assert run(capsys, "algebra-dump", "extreme:1", "--json", str(p))[0] == 0
    (alg,) = json.loads(p.read_text())["algebras"]
    assert len(alg["basis"]) == 8


def test_algebra_dump_genus2_frozen(capsys):
    from hhtate.golden import load_golden

    want = load_golden()["algebra_dims"]["antipodal:2"]["0"]
    code, out, _ = run(capsys, "algebra-dump", "antipodal:2", "--json", "-")
    assert code == 0 and f"dimension {want}," in out


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("TATE_THREADS", "0")
    assert run(capsys, "verify-extreme", "--genus", "1")[0] == 2
    monkeypatch.setenv("TATE_THREADS", "2")
    code, out, _ = run(capsys, "verify-extreme", "--genus", "1..2")
    assert code == 0
    assert out.index("genus 1") < out.index("genus 2")
