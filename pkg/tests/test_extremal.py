import json

import pytest

from zpcount import (
    ResultCache, SizeGuardError, Subset, minimize_s_general, minimize_sk,
    s_count, s_k_count, scan_k0, sigma_vector, verify_thm_interval_extremal,
    verify_thm_k1, verify_thm_knot1,
)

from conftest import brute_s_k


def test_minimize_sk_tiny_vs_brute():
    from itertools import combinations

    for p, a, k in ((5, 2, 2), (5, 3, 3), (7, 3, 2), (7, 4, 4)):
        rep = minimize_sk(p, a, k)
        brute = min(
            brute_s_k(Subset.from_residues(p, xs), k)
            for xs in combinations(range(p), a)
        )
        assert rep.min_value == brute
        for cls in rep.extremal_orbits:
            assert s_k_count(cls, k) == rep.min_value


def test_minimize_sk_methods_agree():
    for p, a, k in ((7, 3, 2), (7, 3, 8), (11, 3, 12), (7, 4, 5)):
        r1 = minimize_sk(p, a, k)
        r2 = minimize_sk(p, a, k, method="raw")
        assert r1.min_value == r2.min_value
        assert r1.extremal_orbits == r2.extremal_orbits


def test_minimize_sk_flagship_value():
    rep = minimize_sk(17, 14, 3)
    assert rep.min_value == 2255
    named1 = Subset.from_residues(17, range(-1, 13)).dilation_class_canonical()
    named2 = Subset.from_residues(17, list(range(6, 19)) + [3]).dilation_class_canonical()
    assert named1 in rep.extremal_orbits
    assert named2 in rep.extremal_orbits


def test_minimize_sk_orbit_vs_dilation_kind():
    # k = 1 mod p: whole affine orbits share the count
    assert minimize_sk(7, 3, 8).extremal_kind == "orbit"
    # otherwise only dilation classes do
    assert minimize_sk(7, 3, 3).extremal_kind == "dilation-class"


def test_minimize_sk_parallel_matches_serial():
    rj = minimize_sk(13, 4, 3, jobs=2)
    rs = minimize_sk(13, 4, 3)
    assert rj.min_value == rs.min_value
    assert rj.extremal_orbits == rs.extremal_orbits


def test_minimize_s_general_modes_agree():
    for sizes in ((2, 2, 2), (3, 3, 3), (1, 4, 2), (4, 2, 3), (5, 3, 2)):
        f = minimize_s_general(5, sizes, mode="full")
        i = minimize_s_general(5, sizes, mode="interval")
        assert f.min_value == i.min_value
        for cfg in f.extremal_configs:
            assert s_count(cfg[0], list(cfg[1:])) == f.min_value


def test_minimize_s_general_edges():
    assert minimize_s_general(5, (5, 3, 2), mode="full").min_value == 6
    assert minimize_s_general(7, (2, 2, 2), mode="full").min_value == 0
    with pytest.raises(ValueError):
        minimize_s_general(7, (0, 2, 2))
    with pytest.raises(SizeGuardError):
        minimize_s_general(31, (15, 15, 15, 15), mode="full")


def test_search_report_json():
    j = minimize_sk(7, 3, 2).to_json()
    assert j["p"] == 7 and j["k"] == 2
    assert isinstance(j["min_value"], str)
    assert j["method"] in ("EXHAUSTIVE_ORBITS", "EXHAUSTIVE_RAW")


def test_verify_thm1_verdicts():
    v = verify_thm_interval_extremal(7, (3, 3, 3))
    assert v.passed
    det = v.points[0].details
    assert det["brute_min"] == det["interval_min"]
    # uniform sizes, k != 1 mod p: a single common set attains the minimum
    common = Subset.from_residues(7, det["common_set"])
    assert s_k_count(common, 2) == int(det["common_value"])
    assert verify_thm_interval_extremal(5, (2, 3, 4)).passed


def test_verify_thm_knot1_small():
    ks = [k for k in range(2, 30) if k % 7 != 1]
    v = verify_thm_knot1(7, 3, ks)
    assert v.passed
    assert v.threshold == 2
    assert all(pt.status == "holds" for pt in v.points)
    for pt in v.points:
        assert set(pt.details["phase_indices"]) <= {6, 7, 8}
    with pytest.raises(ValueError):
        verify_thm_knot1(7, 3, [8])  # 8 = 1 mod 7


def test_verify_thm_k1_part1_even():
    v = verify_thm_k1(7, 4, range(1, 13))
    assert v.passed
    for pt in v.points:
        if pt.details["part"] == "1":
            assert pt.details["k"] % 2 == 0
            assert pt.status in ("holds", "below-threshold")


def test_verify_thm_k1_part2_buckets():
    v = verify_thm_k1(13, 3, range(1, 16))
    buckets = {pt.details.get("bucket") for pt in v.points if pt.details["part"] == "2"}
    assert "2b" in buckets and "2c" in buckets
    for pt in v.points:
        if pt.details["part"] == "2" and pt.status == "holds":
            interval_value = int(pt.details["values"]["(0, 1, 2)"])
            assert int(pt.details["min_value"]) < interval_value


def test_scan_k0_modes():
    sc = scan_k0(7, 3, "knot1", k_limit=60)
    assert sc.passed and sc.threshold == 2
    sc2 = scan_k0(7, 4, "k1-even", k_limit=200)
    assert sc2.passed and sc2.threshold is not None
    sc3 = scan_k0(7, 3, "k1-part2", k_limit=200)
    assert sc3.passed and sc3.threshold is not None
    with pytest.raises(ValueError):
        scan_k0(7, 3, "k1-even")  # odd a has no even-k family
    with pytest.raises(ValueError):
        scan_k0(7, 3, "bogus")


def test_result_cache_roundtrip(tmp_path):
    cache = ResultCache(tmp_path)
    cold = minimize_sk(11, 3, 5, cache=cache)
    warm = minimize_sk(11, 3, 5, cache=ResultCache(tmp_path))
    assert json.dumps(cold.to_json(), sort_keys=True) == \
        json.dumps(warm.to_json(), sort_keys=True)


def test_result_cache_drops_corrupt_entries(tmp_path):
    cache = ResultCache(tmp_path)
    good = minimize_sk(11, 3, 5, cache=cache)
    poisoned = ResultCache(tmp_path)
    key = ResultCache._key(11, 3, 5, "EXHAUSTIVE_ORBITS")
    poisoned._entries[key]["min_value"] = "1"
    fixed = minimize_sk(11, 3, 5, cache=poisoned)
    assert fixed.min_value == good.min_value


def test_result_cache_ignores_garbage_lines(tmp_path):
    (tmp_path / "sk.jsonl").write_text('not json\n{"key": "half\n')
    cache = ResultCache(tmp_path)
    rep = minimize_sk(7, 3, 2, cache=cache)
    assert rep.min_value == minimize_sk(7, 3, 2).min_value


def test_minimize_input_guards():
    with pytest.raises(ValueError):
        minimize_sk(7, 0, 2)
    with pytest.raises(ValueError):
        minimize_sk(7, 3, 1)
    with pytest.raises(ValueError):
        minimize_sk(8, 3, 2)


def test_translate_row_consistency():
    # k != 1 mod p search path: every claimed attainer really attains
    rep = minimize_sk(11, 4, 3)
    sig_checked = 0
    for cls in rep.extremal_orbits:
        assert s_k_count(cls, 3) == rep.min_value
        sig_checked += 1
    assert sig_checked == len(rep.extremal_orbits) > 0
    # and no interval translate beats it
    best_interval = min(
        s_k_count(Subset.interval(11, 4, start=t), 3) for t in range(11)
    )
    assert rep.min_value <= best_interval


def test_sigma_based_attainment_cross_check():
    rep = minimize_sk(13, 5, 4)
    iv = Subset.interval(13, 5)
    sig = sigma_vector([iv] * 4)
    interval_value = sum(sig[x] for x in iv.members())
    assert s_k_count(iv, 4) == interval_value
    assert rep.min_value <= interval_value
    assert rep.checked > 0
