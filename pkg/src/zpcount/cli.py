"""Command-line surface: every library operation behind one executable.

Outputs are deterministic JSON (sorted keys; no wall-clock fields except the
elapsed stored inside reports, which a warm cache replays verbatim), CSV with
fixed versioned columns, or a short human summary.  Each JSON document embeds
the command and its parameters so `recheck FILE` can re-run the computation
and confirm the stored result byte-for-byte (elapsed excluded).

Exit codes: 0 success, 1 usage or guard error, 2 a verification verdict
failed or a recheck mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import (
    VERSION, SizeGuardError, Subset, is_odd_prime, orbit_catalog,
)
from .counting import count_vector_to_json, power_sigma, s_count, s_k_count, sigma_vector
from .extremal import (
    ResultCache, minimize_s_general, minimize_sk, scan_k0,
    verify_thm_interval_extremal, verify_thm_k1, verify_thm_knot1,
)
from .fourier import (
    angle_check_punctured, optimal_t, spectral_levels, translate_phase_index,
)
from .pollard import (
    classify_equality_k2, critical_r0, interval_profile,
    optimal_interval_translate, pollard_lhs_rhs, threshold_profile,
)

CSV_SCHEMA = "1"


def _parse_residues(text: str, p: int) -> list[int]:
    """Comma-separated residues; negatives reduce mod p; "x..y" spans a range."""
    out: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise ValueError("empty entry in set literal")
        if ".." in token:
            lo_s, hi_s = token.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError(f"descending range {token!r}")
            if hi - lo + 1 > p:
                raise ValueError(f"range {token!r} longer than the group")
            out.extend(v % p for v in range(lo, hi + 1))
        else:
            out.append(int(token) % p)
    if len(set(out)) != len(out):
        raise ValueError(f"set literal repeats a residue mod {p}")
    return out


def _parse_sizes(text: str) -> tuple[int, ...]:
    sizes = tuple(int(tok) for tok in text.split(","))
    if not sizes:
        raise ValueError("empty size list")
    return sizes


def _require_prime(p: int) -> None:
    if not is_odd_prime(p) or p >= 64:
        raise ValueError(f"p must be an odd prime below 64, got {p}")


# --- handlers: params dict in, result dict out ---------------------------------


def _run_count(params: dict) -> dict:
    p = params["p"]
    _require_prime(p)
    sets = [Subset.from_residues(p, xs) for xs in params["sets"]]
    k = params.get("k")
    if len(sets) == 1:
        if k is None:
            raise ValueError("one set needs --k to count (k+1)-tuples")
        value = s_k_count(sets[0], k)
    else:
        if k is not None and k != len(sets) - 1:
            raise ValueError("explicit sets fix k; drop --k or match it")
        k = len(sets) - 1
        value = s_count(sets[0], sets[1:])
    return {"p": p, "k": k, "sets": [list(s.members()) for s in sets],
            "count": str(value)}


def _run_sigma(params: dict) -> dict:
    p = params["p"]
    _require_prime(p)
    sets = [Subset.from_residues(p, xs) for xs in params["sets"]]
    k = params.get("k")
    if k is not None:
        if len(sets) != 1:
            raise ValueError("--k powers a single set; give exactly one --set")
        vec = power_sigma(sets[0], k)
    else:
        vec = sigma_vector(sets)
    return {"p": p, "sigma": count_vector_to_json(vec)}


def _run_pollard(params: dict) -> dict:
    p = params["p"]
    _require_prime(p)
    sizes = params.get("sizes")
    set_lists = params.get("sets")
    if sizes and set_lists:
        raise ValueError("give --sizes or --set literals, not both")
    if sizes:
        sizes = tuple(sizes)
        r0 = critical_r0(sizes, p)
        prof = interval_profile(p, tuple(sizes[1:]))
        return {
            "p": p,
            "sizes": list(sizes),
            "r0": r0,
            "interval_profile": prof.to_json(),
            "optimal_head_translate": optimal_interval_translate(sizes, p),
        }
    if not set_lists:
        raise ValueError("pollard needs --sizes or --set literals")
    a0 = params.get("a0")
    if a0 is None:
        raise ValueError("set mode needs --a0 (head size fixing r0)")
    sets = [Subset.from_residues(p, xs) for xs in set_lists]
    sets.sort(key=lambda s: s.size)
    sizes = (a0,) + tuple(s.size for s in sets)
    r0 = critical_r0(sizes, p)
    prof = threshold_profile(sets)
    partial = [
        {"r": r, "lhs": pollard_lhs_rhs(sets, r)[0], "rhs": pollard_lhs_rhs(sets, r)[1]}
        for r in range(1, max(r0, 1) + 1)
    ]
    out = {
        "p": p,
        "sizes": list(sizes),
        "r0": r0,
        "profile": prof.to_json(),
        "partial_sums": partial,
    }
    if len(sets) == 2 and 1 <= r0 <= sets[0].size <= sets[1].size < p:
        out["classification"] = classify_equality_k2(sets[0], sets[1], r0).to_json()
    return out


def _run_spectrum(params: dict) -> dict:
    p = params["p"]
    _require_prime(p)
    kwargs = {}
    if params.get("precision"):
        kwargs["precision"] = params["precision"]
    levels = spectral_levels(p, params["a"], depth=params.get("depth", 3), **kwargs)
    return levels.to_json()


def _run_optimal_t(params: dict) -> dict:
    p, a, k = params["p"], params["a"], params["k"]
    _require_prime(p)
    ts = sorted(optimal_t(p, a, k))
    return {
        "p": p, "a": a, "k": k, "t": ts,
        "phase_indices": [translate_phase_index(p, a, k, t) for t in ts],
    }


def _run_angle_check(params: dict) -> dict:
    p = params["p"]
    _require_prime(p)
    kwargs = {}
    if params.get("precision"):
        kwargs["precision"] = params["precision"]
    a = params.get("a")
    if a is not None:
        return angle_check_punctured(p, a, **kwargs).to_json()
    checks = [angle_check_punctured(p, a_, **kwargs).to_json() for a_ in range(3, p - 2)]
    return {"p": p, "checks": checks,
            "all_passed": all(c["passed"] and c["branch_ok"] for c in checks)}


def _cache_from(params: dict) -> ResultCache | None:
    cache_dir = params.get("cache_dir")
    return ResultCache(cache_dir) if cache_dir else None


def _run_minimize(params: dict) -> dict:
    p = params["p"]
    _require_prime(p)
    if params.get("sizes"):
        report = minimize_s_general(p, params["sizes"], mode=params.get("mode", "auto"))
    else:
        if params.get("a") is None or params.get("k") is None:
            raise ValueError("minimize needs --a with --k, or --sizes")
        report = minimize_sk(
            p, params["a"], params["k"],
            method=params.get("method", "auto"),
            jobs=params.get("threads", 1),
            cache=_cache_from(params),
        )
    return report.to_json()


def _run_verify(params: dict) -> dict:
    which = params["claim"]
    p = params["p"]
    _require_prime(p)
    cache = _cache_from(params)
    if which == "thm1":
        if params.get("all_sizes"):
            k = params.get("k")
            if k is None:
                raise ValueError("--all-sizes needs --k")
            verdicts = []
            ok = True
            for sizes in _all_size_vectors(p, k):
                v = verify_thm_interval_extremal(p, sizes)
                ok = ok and v.passed
                verdicts.append(v.to_json())
            return {"p": p, "k": k, "all_passed": ok, "verdicts": verdicts}
        if not params.get("sizes"):
            raise ValueError("verify thm1 needs --sizes or --all-sizes")
        return verify_thm_interval_extremal(p, params["sizes"]).to_json()
    if which == "thm3":
        lo, hi = params.get("k_min", 2), params["k_max"]
        ks = [k for k in range(max(lo, 2), hi + 1) if k % p != 1]
        return verify_thm_knot1(
            p, params["a"], ks, jobs=params.get("threads", 1), cache=cache
        ).to_json()
    if which == "thm5":
        lo, hi = params.get("s_min", 1), params["s_max"]
        return verify_thm_k1(p, params["a"], range(lo, hi + 1), cache=cache).to_json()
    if which == "cor7":
        return _verify_cor7(p)
    raise ValueError(f"unknown claim {which!r}")


def _all_size_vectors(p: int, k: int):
    from itertools import product as _product

    yield from _product(range(1, p + 1), repeat=k + 1)


def _verify_cor7(p_max: int) -> dict:
    """Orbit-count characterization sweep over odd primes p <= p_max:
    at least 3 orbits exactly when (p >= 13 and 3 <= a <= p-3) or
    (p >= 11 and 4 <= a <= p-4)."""
    rows = []
    ok = True
    for p in range(3, p_max + 1):
        if not is_odd_prime(p):
            continue
        for a in range(1, p):
            n = len(orbit_catalog(p, a).reps)
            expected_ge3 = (p >= 13 and 3 <= a <= p - 3) or (p >= 11 and 4 <= a <= p - 4)
            holds = (n >= 3) == expected_ge3
            ok = ok and holds
            rows.append({"p": p, "a": a, "orbits": n,
                         "expected_ge3": expected_ge3, "holds": holds})
    return {"p_max": p_max, "all_passed": ok, "rows": rows}


def _run_scan_k0(params: dict) -> dict:
    p = params["p"]
    _require_prime(p)
    return scan_k0(
        p, params["a"], params["mode"],
        k_limit=params.get("k_limit", 500),
        window=params.get("window"),
        jobs=params.get("threads", 1),
        cache=_cache_from(params),
    ).to_json()


def _run_orbits(params: dict) -> dict:
    p = params["p"]
    _require_prime(p)
    return orbit_catalog(p, params["a"]).to_json()


_HANDLERS = {
    "count": _run_count,
    "sigma": _run_sigma,
    "pollard": _run_pollard,
    "spectrum": _run_spectrum,
    "optimal-t": _run_optimal_t,
    "angle-check": _run_angle_check,
    "minimize": _run_minimize,
    "verify": _run_verify,
    "scan-k0": _run_scan_k0,
    "orbits": _run_orbits,
}


def _verification_failed(command: str, result: dict) -> bool:
    if command == "verify":
        if "all_passed" in result:
            return not result["all_passed"]
        return not result.get("passed", True)
    if command == "scan-k0":
        return not result.get("passed", True)
    if command == "angle-check":
        if "all_passed" in result:
            return not result["all_passed"]
        return not (result.get("passed") and result.get("branch_ok"))
    return False


def _strip_elapsed(obj):
    if isinstance(obj, dict):
        return {k: _strip_elapsed(v) for k, v in obj.items() if k != "elapsed"}
    if isinstance(obj, list):
        return [_strip_elapsed(v) for v in obj]
    return obj


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    elif fmt == "csv":
        _emit_csv(doc)
    else:
        _emit_human(doc)


def _emit_csv(doc: dict) -> None:
    import csv

    writer = csv.writer(sys.stdout)
    writer.writerow(["schema", f"{doc['command']}/{CSV_SCHEMA}"])
    result = doc["result"]
    rows = None
    if doc["command"] == "verify" and "points" in result:
        writer.writerow(["x", "status", "threshold", "passed"])
        rows = [[pt["x"], pt["status"], result["threshold"], result["passed"]]
                for pt in result["points"]]
    elif doc["command"] == "scan-k0":
        writer.writerow(["k", "status", "threshold", "passed"])
        rows = [[pt["x"], pt["status"], result["threshold"], result["passed"]]
                for pt in result["points"]]
    if rows is None:
        writer.writerow(["key", "value"])
        rows = [[k, json.dumps(v, sort_keys=True)] for k, v in sorted(result.items())]
    writer.writerows(rows)


def _emit_human(doc: dict) -> None:
    print(f"{doc['command']}:")
    for key, value in sorted(doc["result"].items()):
        text = json.dumps(value, sort_keys=True)
        if len(text) > 120:
            text = text[:117] + "..."
        print(f"  {key}: {text}")


def _run_recheck(path: str, fmt: str) -> int:
    with open(path) as fh:
        doc = json.load(fh)
    command, params = doc["command"], doc["params"]
    fresh = json.loads(json.dumps(_HANDLERS[command](params)))  # normalize tuples
    match = _strip_elapsed(fresh) == _strip_elapsed(doc["result"])
    _emit({"command": "recheck", "params": {"file": path},
           "result": {"target": command, "match": match}}, fmt)
    return 0 if match else 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default="json")
    common.add_argument("--precision", type=int, default=None,
                        help="working precision in bits for spectral commands")
    common.add_argument("--cache-dir", default=os.environ.get("ZPCOUNT_CACHE_DIR"),
                        help="result cache directory (env ZPCOUNT_CACHE_DIR)")
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="zpcount",
        description="Counts of additive (k+1)-tuples in Z_p and their minimizers.",
    )
    parser.add_argument("--version", action="version", version=f"zpcount {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", parents=[common],
                        help="s_k of one set, or s(A0; A1..Ak) of explicit sets")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--set", action="append", required=True, metavar="RESIDUES")
    sp.add_argument("--k", type=int)

    sp = sub.add_parser("sigma", parents=[common],
                        help="count vector of a set list or a k-th power")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--set", action="append", required=True, metavar="RESIDUES")
    sp.add_argument("--k", type=int)

    sp = sub.add_parser("pollard", parents=[common],
                        help="threshold profile, r0, partial sums, equality class")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--sizes", metavar="A0,A1,..")
    sp.add_argument("--set", action="append", metavar="RESIDUES")
    sp.add_argument("--a0", type=int, help="head size (set mode)")

    sp = sub.add_parser("spectrum", parents=[common],
                        help="top coefficient-magnitude levels across orbits")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--depth", type=int, default=3)

    sp = sub.add_parser("optimal-t", parents=[common],
                        help="translates of [a] with the most negative dominant term")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("angle-check", parents=[common],
                        help="punctured-interval argument vs the pi/p lattice")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int)

    sp = sub.add_parser("minimize", parents=[common],
                        help="exact minimum of s_k (--a/--k) or s (--sizes)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--sizes", metavar="A0,A1,..")
    sp.add_argument("--method", choices=("auto", "raw"), default="auto")
    sp.add_argument("--mode", choices=("auto", "full", "interval"), default="auto")

    sp = sub.add_parser("verify", parents=[common],
                        help="point-by-point verdicts for the structural claims")
    sp.add_argument("claim", choices=("thm1", "thm3", "thm5", "cor7"))
    sp.add_argument("--p", type=int, required=True,
                    help="prime (for cor7: sweep primes up to this value)")
    sp.add_argument("--a", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--sizes", metavar="A0,A1,..")
    sp.add_argument("--all-sizes", action="store_true")
    sp.add_argument("--k-min", type=int, default=2)
    sp.add_argument("--k-max", type=int)
    sp.add_argument("--s-min", type=int, default=1)
    sp.add_argument("--s-max", type=int)

    sp = sub.add_parser("scan-k0", parents=[common],
                        help="least k* whose claim holds across a trailing window")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--mode", choices=("knot1", "k1-even", "k1-part2"), required=True)
    sp.add_argument("--k-limit", type=int, default=500)
    sp.add_argument("--window", type=int)

    sp = sub.add_parser("orbits", parents=[common],
                        help="affine orbit catalog for (p, a)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)

    sp = sub.add_parser("recheck", parents=[common],
                        help="re-run a stored JSON report and compare")
    sp.add_argument("file")
    return parser


def _params_from_args(args: argparse.Namespace) -> dict:
    params: dict = {}
    for key in ("p", "a", "k", "a0", "depth", "mode", "method", "claim",
                "all_sizes", "k_min", "k_max", "s_min", "s_max", "k_limit",
                "window", "precision", "cache_dir", "threads"):
        val = getattr(args, key, None)
        if val is not None and val is not False:
            params[key] = val
    if getattr(args, "sizes", None):
        params["sizes"] = list(_parse_sizes(args.sizes))
    raw_sets = getattr(args, "set", None)
    if raw_sets:
        if "p" not in params:
            raise ValueError("--set needs --p")
        params["sets"] = [_parse_residues(text, params["p"]) for text in raw_sets]
    return params


def _glue_value_flags(argv: list[str]) -> list[str]:
    """Join "--set -1..12" into "--set=-1..12" so leading minus signs survive."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--set", "--sizes") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_value_flags(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as exc:  # argparse uses 2 for usage errors; keep that for verdicts
        if exc.code not in (0, None):
            return 1
        return 0
    try:
        if args.command == "recheck":
            return _run_recheck(args.file, args.format)
        params = _params_from_args(args)
        result = _HANDLERS[args.command](params)
    except (ValueError, SizeGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    doc = {"command": args.command, "params": params, "result": result}
    _emit(doc, args.format)
    return 2 if _verification_failed(args.command, result) else 0


if __name__ == "__main__":
    sys.exit(main())
