#!/usr/bin/env python3
# ===========================================================
# Threshold-set walkthrough at p = 11 with sizes (3, 7, 7):
# - build sigma and the nested sets N_r = {x : sigma(x) >= r}
# - locate the critical index r0 (first r with n_r <= p - a0)
# - compare partial sums Sum_{i<=r} n_i against the interval
#   configuration of the same sizes (the lower bound)
# - classify an equality pair and test the extremality conditions
# ===========================================================
from zpcount import (
    Subset, check_extremality_conditions, classify_equality_k2, critical_r0,
    interval_profile, minimize_s_general, pollard_lhs_rhs, sigma_vector,
    threshold_profile, threshold_set,
)

P = 11
A0 = 3

tail = [Subset.interval(P, 7), Subset.from_residues(P, [0, 1, 2, 3, 4, 5, 7])]
prof = threshold_profile(tail)
iprof = interval_profile(P, (7, 7))
r0 = critical_r0((A0, 7, 7), P)

print(f"p = {P}, head size a0 = {A0}, tail sizes (7, 7)")
print(f"sigma = {sigma_vector(tail)}")
print(f"critical index r0 = {r0}  (first r with n_r <= p - a0 = {P - A0})\n")

print(f"{'r':>3} {'n_r':>4} {'interval n_r':>13} {'lhs':>5} {'rhs':>5}  N_r")
for r in range(1, 8):
    lhs, rhs = pollard_lhs_rhs(tail, r)
    print(f"{r:>3} {prof.n_r(r):>4} {iprof.n_r(r):>13} {lhs:>5} {rhs:>5}  "
          f"{threshold_set(tail, r).members()}")
print("\nlhs >= rhs at every r; equality through r0 is what extremal"
      " configurations achieve.")

# ----- equality classification at r0 -----
# same sizes, both sets actual intervals: equality via a common difference
s1 = Subset.interval(P, 7)
case = classify_equality_k2(s1, s1, r0)
print(f"\ninterval pair at r0 = {r0}: matches = {[t.name for t in case.matches]},"
      f" common difference d = {case.common_difference}")

big = classify_equality_k2(tail[0], tail[1], r0)
print(f"mixed pair: tag = {big.tag.name} (a1 + a2 = 14 >= p + r0 = {P + r0})")

# ----- the three extremality conditions -----
# here the complement of N_{r0+1} has p - n_{r0+1} = a0 members, so it is
# the only admissible head: misses N_{r0+1}, covers the (empty) complement
# of N_{r0}, and the partial sums tie at r0
head = threshold_set(tail, r0 + 1).complement()
assert head.size == A0
conds = check_extremality_conditions(head, tail)
sigma = sigma_vector(tail)
value = sum(sigma[x] for x in head.members())
best = minimize_s_general(P, (A0, 7, 7), mode="interval").min_value
print(f"\nhead {head.members()}: (miss, cover, tie) = {conds}")
print(f"count through this head = {value}, global minimum for sizes = {best}")
