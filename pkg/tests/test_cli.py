import json

import pytest

from zpcount import Subset, s_count
from zpcount.cli import _parse_residues, _parse_sizes, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err or out
    return json.loads(out)


def test_parse_residues():
    assert _parse_residues("-1..12", 17) == [16] + list(range(0, 13))
    assert _parse_residues("0,5,-2", 11) == [0, 5, 9]
    with pytest.raises(ValueError):
        _parse_residues("3,10", 7)  # 10 = 3 mod 7
    with pytest.raises(ValueError):
        _parse_residues("5..2", 11)
    with pytest.raises(ValueError):
        _parse_residues("0..11", 11)
    with pytest.raises(ValueError):
        _parse_sizes("")


def test_count_single_set(capsys):
    doc = run_json(capsys, "count", "--p", "17", "--k", "3", "--set", "-1..12")
    assert doc["result"]["count"] == "2255"
    assert doc["command"] == "count"


def test_count_explicit_sets(capsys):
    doc = run_json(capsys, "count", "--p", "7",
                   "--set", "1,2,4", "--set", "0..2", "--set", "3,5")
    expect = s_count(Subset.from_residues(7, [1, 2, 4]),
                     [Subset.from_residues(7, [0, 1, 2]),
                      Subset.from_residues(7, [3, 5])])
    assert doc["result"]["count"] == str(expect)
    assert doc["result"]["k"] == 2


def test_count_usage_errors(capsys):
    code, _, err = run(capsys, "count", "--p", "7", "--set", "0,1")
    assert code == 1 and "needs --k" in err
    code, _, err = run(capsys, "count", "--p", "7", "--set", "0,1",
                       "--set", "2,3", "--k", "3")
    assert code == 1 and "fix k" in err
    code, _, err = run(capsys, "count", "--p", "6", "--set", "0,1", "--k", "2")
    assert code == 1 and "odd prime" in err


def test_argparse_usage_is_exit_1(capsys):
    assert main(["count", "--p", "7"]) == 1  # missing --set
    assert main(["no-such-command"]) == 1
    code, _, _ = run(capsys, "--help")
    assert code == 0


def test_sigma_power(capsys):
    doc = run_json(capsys, "sigma", "--p", "5", "--set", "0..2", "--k", "2")
    assert doc["result"]["sigma"] == ["1", "2", "3", "2", "1"]


def test_pollard_sizes_mode(capsys):
    doc = run_json(capsys, "pollard", "--p", "11", "--sizes", "3,7,7")
    assert doc["result"]["r0"] == 3
    assert doc["result"]["interval_profile"]["n"][0] == 11


def test_pollard_set_mode_with_classification(capsys):
    doc = run_json(capsys, "pollard", "--p", "11", "--a0", "3",
                   "--set", "0,1,2,3,4,5,7", "--set", "0,1,2,3,4,5,7")
    res = doc["result"]
    assert res["r0"] == 3
    assert res["classification"]["tag"] == "LARGE_SUM"
    assert all(row["lhs"] >= row["rhs"] for row in res["partial_sums"])


def test_spectrum(capsys):
    doc = run_json(capsys, "spectrum", "--p", "13", "--a", "3")
    assert len(doc["result"]["levels"]) == 3


def test_optimal_t(capsys):
    doc = run_json(capsys, "optimal-t", "--p", "13", "--a", "5", "--k", "3")
    assert doc["result"]["t"] == [1, 8]


def test_angle_check_single_and_sweep(capsys):
    doc = run_json(capsys, "angle-check", "--p", "13", "--a", "3")
    assert doc["result"]["passed"] is True
    doc = run_json(capsys, "angle-check", "--p", "11")
    assert doc["result"]["all_passed"] is True
    assert len(doc["result"]["checks"]) == len(range(3, 9))


def test_minimize_and_cache(capsys, tmp_path):
    argv = ("minimize", "--p", "17", "--a", "14", "--k", "3",
            "--cache-dir", str(tmp_path))
    cold = run_json(capsys, *argv)
    warm = run_json(capsys, *argv)
    assert cold["result"]["min_value"] == "2255"
    assert cold == warm  # byte-identical replay from cache
    assert (tmp_path / "sk.jsonl").exists()


def test_minimize_sizes_mode(capsys):
    doc = run_json(capsys, "minimize", "--p", "11", "--sizes", "3,4,2",
                   "--mode", "interval")
    assert doc["result"]["min_value"] == "0"


def test_verify_thm1_all_sizes(capsys):
    doc = run_json(capsys, "verify", "thm1", "--p", "5", "--k", "2", "--all-sizes")
    assert doc["result"]["all_passed"] is True
    assert len(doc["result"]["verdicts"]) == 125


def test_verify_thm3(capsys):
    doc = run_json(capsys, "verify", "thm3", "--p", "7", "--a", "3",
                   "--k-max", "20")
    assert doc["result"]["passed"] is True
    xs = [pt["x"] for pt in doc["result"]["points"]]
    assert all(x % 7 != 1 for x in xs)


def test_verify_thm5(capsys):
    doc = run_json(capsys, "verify", "thm5", "--p", "7", "--a", "4",
                   "--s-max", "6")
    assert doc["result"]["passed"] is True


def test_verify_cor7(capsys):
    doc = run_json(capsys, "verify", "cor7", "--p", "13")
    assert doc["result"]["all_passed"] is True
    rows = {(r["p"], r["a"]): r for r in doc["result"]["rows"]}
    assert rows[(7, 3)]["orbits"] == 2
    assert rows[(13, 3)]["orbits"] >= 3


def test_scan_k0(capsys):
    doc = run_json(capsys, "scan-k0", "--p", "7", "--a", "3",
                   "--mode", "knot1", "--k-limit", "40")
    assert doc["result"]["threshold"] == 2


def test_orbits(capsys):
    doc = run_json(capsys, "orbits", "--p", "7", "--a", "3")
    assert doc["result"]["orbit_count"] == 2
    assert sorted(doc["result"]["orbit_sizes"]) == [14, 21]


def test_json_output_is_deterministic(capsys):
    _, out1, _ = run(capsys, "spectrum", "--p", "11", "--a", "4")
    _, out2, _ = run(capsys, "spectrum", "--p", "11", "--a", "4")
    assert out1 == out2


def test_csv_format(capsys):
    code, out, _ = run(capsys, "verify", "thm3", "--p", "7", "--a", "3",
                       "--k-max", "10", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("schema,verify/")
    assert lines[1] == "x,status,threshold,passed"
    assert len(lines) > 3


def test_human_format(capsys):
    code, out, _ = run(capsys, "orbits", "--p", "7", "--a", "3",
                       "--format", "human")
    assert code == 0
    assert out.startswith("orbits:")
    assert "orbit_count: 2" in out


def test_recheck_roundtrip(capsys, tmp_path):
    for argv in (
        ("count", "--p", "17", "--k", "3", "--set", "-1..12"),
        ("orbits", "--p", "7", "--a", "3"),
        ("verify", "thm3", "--p", "7", "--a", "3", "--k-max", "12"),
        ("minimize", "--p", "7", "--a", "3", "--k", "4"),
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        f = tmp_path / "report.json"
        f.write_text(out)
        code, out2, _ = run(capsys, "recheck", str(f))
        assert code == 0, out2
        assert json.loads(out2)["result"]["match"] is True


def test_recheck_detects_tampering(capsys, tmp_path):
    _, out, _ = run(capsys, "count", "--p", "7", "--set", "0..2", "--k", "2")
    doc = json.loads(out)
    doc["result"]["count"] = "999"
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, out2, _ = run(capsys, "recheck", str(f))
    assert code == 2
    assert json.loads(out2)["result"]["match"] is False


def test_env_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ZPCOUNT_CACHE_DIR", str(tmp_path))
    doc = run_json(capsys, "minimize", "--p", "7", "--a", "3", "--k", "5")
    assert doc["params"]["cache_dir"] == str(tmp_path)
    assert (tmp_path / "sk.jsonl").exists()
