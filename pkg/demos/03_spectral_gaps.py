#!/usr/bin/env python3
# ===========================================================
# Spectral side of the story at p = 13, a = 3:
# - nontrivial DFT magnitudes of the three orbit representatives
# - the level ladder m1 > m2 > m3 with certified gaps
# - lattice avoidance of the punctured interval's argument
# - sign windows for k = s*p + 1 checked against exact counts
# ===========================================================
from mpmath import mp

from zpcount import (
    Subset, angle_check_punctured, dft_indicator, orbit_catalog, s_k_count,
    spectral_levels, t_good_scan,
)

P, A = 13, 3
PREC = 256

catalog = orbit_catalog(P, A)
print(f"p = {P}, a = {A}: {len(catalog.reps)} affine orbits")

with mp.workprec(PREC):
    for rep in catalog.reps:
        prof = dft_indicator(rep, PREC)
        mags = sorted((prof.magnitude(g) for g in range(1, P)), reverse=True)
        print(f"  rep {rep.members()}: top |coeff| = {mp.nstr(mags[0], 10)},"
              f" next {mp.nstr(mags[2], 10)}")

lv = spectral_levels(P, A, precision=PREC)
print(f"\nlevel ladder (gap/err = {lv.min_gap_over_err:.3g}):")
for i, (level, group) in enumerate(zip(lv.levels, lv.attainers), start=1):
    names = ", ".join(str(rep.members()) for rep, _ in group)
    print(f"  m{i} = {mp.nstr(level, 12)}  attained by {names}")

chk = angle_check_punctured(P, A)
print(f"\nargument of punctured-interval coefficient at frequency 1:")
print(f"  distance to (pi/p)*Z = {mp.nstr(chk.distance, 8)}"
      f"  (error bound {mp.nstr(chk.angle_err, 4)}, certified nonlattice:"
      f" {chk.exact_nonlattice})")
print(f"  branch: size {chk.branch_size} {chk.branch_parity},"
      f" argument in the open window: {chk.branch_ok}")

# ----- alternation along k = s*p + 1 -----
punct = Subset.punctured_interval(P, A).canonical()
interval = Subset.interval(P, A).canonical()
(third,) = [r for r in catalog.reps if r not in (punct, interval)]
scan = t_good_scan(P, A, range(-6, 7))
print(f"\nsign windows (c = {mp.nstr(scan.c, 8)}, so only t < 0 occur):")
print(f"{'t':>4} {'s':>5} {'k':>7}  predicted  exact winner")
for pt in scan.points:
    if not pt.dominant:
        continue
    diff = s_k_count(punct, pt.k) - s_k_count(third, pt.k)
    predicted = "third orbit" if pt.cos_sign > 0 else "punctured"
    actual = "third orbit" if diff > 0 else "punctured"
    mark = "ok" if predicted == actual else "MISMATCH"
    print(f"{pt.t:>4} {pt.s:>5} {pt.k:>7}  {predicted:>10}  {actual:>11}  {mark}")
