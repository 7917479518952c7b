"""Threshold-set machinery: nested level sets of sigma, partial-sum bounds,
the critical index r0, the k=2 equality classifier, and extremality tests.

For sets A_1, ..., A_k the level set N_r = {x : sigma(x) >= r} is nested in r;
n_r = |N_r| starts at n_0 = p and hits 0 at r_max.  Partial sums of n_r over
interval configurations of the same sizes are the exact lower bound against
which arbitrary configurations are compared.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .core import Subset, prime_context
from .counting import CountVector, sigma_vector


@dataclass(frozen=True)
class ThresholdProfile:
    """n[r] = |{x : sigma(x) >= r}| for r = 0..r_max, with n[r_max] = 0."""

    p: int
    n: tuple[int, ...]

    def __post_init__(self) -> None:
        assert self.n[0] == self.p and self.n[-1] == 0
        assert all(self.n[i] >= self.n[i + 1] for i in range(len(self.n) - 1))

    @property
    def r_max(self) -> int:
        return len(self.n) - 1

    def n_r(self, r: int) -> int:
        if r < 0:
            raise ValueError("r must be nonnegative")
        return self.n[r] if r < len(self.n) else 0

    def partial_sum(self, r: int) -> int:
        """sum_{i=1}^{r} n_i (terms beyond r_max are zero)."""
        return sum(self.n[1 : min(r, self.r_max) + 1])

    def to_json(self) -> dict:
        return {"p": self.p, "n": list(self.n), "r_max": self.r_max}


def profile_from_sigma(p: int, sigma: CountVector) -> ThresholdProfile:
    n = [p]
    r = 1
    while True:
        c = sum(1 for v in sigma if v >= r)
        n.append(c)
        if c == 0:
            break
        r += 1
    return ThresholdProfile(p, tuple(n))


def threshold_profile(sets: Sequence[Subset]) -> ThresholdProfile:
    p = sets[0].p
    return profile_from_sigma(p, sigma_vector(sets))


def threshold_set(sets: Sequence[Subset], r: int) -> Subset:
    """N_r = {x : sigma(x) >= r}; N_0 = Z_p."""
    p = sets[0].p
    if r <= 0:
        return Subset.full(p)
    sigma = sigma_vector(sets)
    mask = 0
    for x, v in enumerate(sigma):
        if v >= r:
            mask |= 1 << x
    return Subset(p, mask)


@lru_cache(maxsize=4096)
def interval_profile(p: int, sizes: tuple[int, ...]) -> ThresholdProfile:
    """Threshold profile of the initial intervals [0, a_i - 1]."""
    sets = tuple(Subset.interval(p, a) for a in sizes)
    return threshold_profile(sets)


def critical_r0(a_sizes: Sequence[int], p: int) -> int:
    """The unique r0 with n_r([a_1],..,[a_k]) > p - a_0 exactly for r <= r0.

    a_sizes = (a_0, a_1, ..., a_k); needs 0 < a_0 < p so that both strict
    sides are nonempty (n_0 = p > p - a_0 and eventually n_r = 0 <= p - a_0).
    """
    prime_context(p)
    if len(a_sizes) < 2:
        raise ValueError("need a_0 plus at least one factor size")
    a0, rest = a_sizes[0], tuple(a_sizes[1:])
    if not 0 < a0 < p:
        raise ValueError(f"critical index needs 0 < a_0 < p, got a_0={a0}")
    if any(not 0 <= a <= p for a in rest):
        raise ValueError("factor sizes must lie in [0, p]")
    prof = interval_profile(p, rest)
    bound = p - a0
    r = 0
    while prof.n_r(r + 1) > bound:
        r += 1
    return r


def pollard_lhs_rhs(sets: Sequence[Subset], r: int) -> tuple[int, int]:
    """(sum_{i<=r} n_i(A_1..A_k), same for the intervals of equal sizes)."""
    if r < 1:
        raise ValueError("partial sums need r >= 1")
    prof = threshold_profile(sets)
    iprof = interval_profile(sets[0].p, tuple(s.size for s in sets))
    return prof.partial_sum(r), iprof.partial_sum(r)


class EqualityTag(enum.Enum):
    R0_EQUALS_A1 = "R0_EQUALS_A1"
    LARGE_SUM = "LARGE_SUM"
    REFLECTION_PAIR = "REFLECTION_PAIR"
    COMPLEMENT_REFLECTION_PAIR = "COMPLEMENT_REFLECTION_PAIR"
    COMMON_DIFFERENCE_APS = "COMMON_DIFFERENCE_APS"
    NONE = "NONE"


@dataclass(frozen=True)
class EqualityCase:
    """First matching equality case plus every case that matched."""

    tag: EqualityTag
    matches: tuple[EqualityTag, ...]
    reflection_point: int | None = None  # g with A_2 = g - A_1
    complement_point: int | None = None  # g with A_2 = g - (Z_p \ A_1)
    common_difference: int | None = None  # smallest shared progression step

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "matches": [t.value for t in self.matches],
            "reflection_point": self.reflection_point,
            "complement_point": self.complement_point,
            "common_difference": self.common_difference,
        }


def _reflection_point(a1: Subset, a2: Subset) -> int | None:
    """g such that A_2 = g - A_1, unique if it exists (p prime)."""
    neg = a1.reflect()
    for g in range(a1.p):
        if neg.translate(g).mask == a2.mask:
            return g
    return None


def classify_equality_k2(a1: Subset, a2: Subset, r0: int) -> EqualityCase:
    """Equality cases for the two-factor partial-sum bound at index r0.

    Requires 1 <= r0 <= |A_1| <= |A_2| < p.  A NONE tag corresponds to strict
    inequality of the partial sums at r0; the correspondence is exhaustively
    testable and is not assumed here.

    The complement-reflection case (r0 = 1, a_1 + a_2 = p, A_2 = g - (Z_p \\ A_1))
    always gives equality: sigma(x) = a_1 - |A_1 meet (A_1 + x - g)| vanishes
    only at x = g because a proper nonempty subset has trivial stabilizer, so
    n_1 = p - 1 matches the interval value.  No list without it survives an
    exhaustive sweep at p = 7.
    """
    p = a1.p
    if a2.p != p:
        raise ValueError("mismatched moduli")
    s1, s2 = a1.size, a2.size
    if not 1 <= r0 <= s1 <= s2 < p:
        raise ValueError(f"need 1 <= r0 <= |A_1| <= |A_2| < p, got r0={r0}, sizes=({s1},{s2})")
    matches: list[EqualityTag] = []
    g: int | None = None
    gc: int | None = None
    d: int | None = None
    if r0 == s1:
        matches.append(EqualityTag.R0_EQUALS_A1)
    if s1 + s2 >= p + r0:
        matches.append(EqualityTag.LARGE_SUM)
    if s1 == s2 == r0 + 1:
        g = _reflection_point(a1, a2)
        if g is not None:
            matches.append(EqualityTag.REFLECTION_PAIR)
    if r0 == 1 and s1 + s2 == p:
        gc = _reflection_point(a1.complement(), a2)
        if gc is not None:
            matches.append(EqualityTag.COMPLEMENT_REFLECTION_PAIR)
    common = sorted(set(a1.arith_prog_differences()) & set(a2.arith_prog_differences()))
    if common:
        d = common[0]
        matches.append(EqualityTag.COMMON_DIFFERENCE_APS)
    tag = matches[0] if matches else EqualityTag.NONE
    return EqualityCase(tag, tuple(matches), reflection_point=g,
                        complement_point=gc, common_difference=d)


def check_extremality_conditions(a0: Subset, sets: Sequence[Subset]) -> tuple[bool, bool, bool]:
    """(A_0 misses N_{r0+1}, A_0 covers the complement of N_{r0}, partial sums tie at r0).

    All three hold together exactly when the configuration minimizes the
    tuple count among configurations of its sizes.  Sizes must lie in [1, p-1].
    """
    p = a0.p
    sizes = (a0.size,) + tuple(s.size for s in sets)
    if any(not 1 <= a <= p - 1 for a in sizes):
        raise ValueError("extremality conditions need all sizes in [1, p-1]")
    r0 = critical_r0(sizes, p)
    sigma = sigma_vector(sets)
    upper_mask = 0  # N_{r0+1}
    lower_mask = 0  # N_{r0}
    for x, v in enumerate(sigma):
        if v >= r0 + 1:
            upper_mask |= 1 << x
        if v >= r0:
            lower_mask |= 1 << x
    empty_ok = (a0.mask & upper_mask) == 0
    whole_ok = (a0.mask | lower_mask) == prime_context(p).full_mask
    if r0 == 0:
        tie_ok = True
    else:
        lhs, rhs = pollard_lhs_rhs(sets, r0)
        tie_ok = lhs == rhs
    return empty_ok, whole_ok, tie_ok


def optimal_interval_translate(a_sizes: Sequence[int], p: int) -> int:
    """Translate t making [a_0]+t meet every level set of the intervals minimally.

    The level sets of ([a_1], ..., [a_k]) are intervals sharing the centre
    c = sum(a_i - 1)/2, so in doubled coordinates (2c mod 2p) the complement
    of [a_0]+t can be centred on c (same parity) or half a step off (parity
    mismatch); both adjacent candidates are tried and the returned t is
    verified against |I ∩ N_r| = max(0, n_r + a_0 - p) for every r >= 1.
    """
    prime_context(p)
    a0, rest = a_sizes[0], tuple(a_sizes[1:])
    if not 0 < a0 < p:
        raise ValueError(f"need 0 < a_0 < p, got a_0={a0}")
    if not rest or any(not 0 <= a <= p for a in rest):
        raise ValueError("factor sizes must lie in [0, p]")
    sigma = sigma_vector(tuple(Subset.interval(p, a) for a in rest))
    prof = profile_from_sigma(p, sigma)
    doubled_centre = sum(a - 1 for a in rest) % (2 * p)
    # complement of [a_0]+t spans t+a_0 .. t+p-1: doubled centre 2t + a_0 + p - 1
    rhs = (doubled_centre - a0 - p + 1) % (2 * p)
    if rhs % 2 == 0:
        candidates = [(rhs // 2) % p]
    else:
        candidates = [((rhs + 1) // 2) % p, ((rhs - 1) // 2) % p]
    for t in candidates:
        interval = Subset.interval(p, a0, t)
        ok = True
        for r in range(1, prof.r_max + 1):
            mask = 0
            for x, v in enumerate(sigma):
                if v >= r:
                    mask |= 1 << x
            if (interval.mask & mask).bit_count() != max(0, prof.n_r(r) + a0 - p):
                ok = False
                break
        if ok:
            return t
    raise AssertionError("no translate satisfies the clipped-intersection identity")
