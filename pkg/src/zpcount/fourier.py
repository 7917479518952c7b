"""High-precision Fourier analysis of subset indicators on Z_p.

Coefficients hat1_A(g) = sum_{x in A} exp(-2*pi*i*x*g/p) are computed with
mpmath at an explicit working precision and carried in polar form together
with a uniform absolute error bound, so every downstream comparison can state
its margin.  Magnitude level sets across orbits, primary images (dilate and
translate a set so its peak coefficient sits at frequency 1 with argument in
(-pi/p, pi/p]), projection score rankings, the spectral form of the tuple
count, optimal interval translates, and the lattice-avoidance check for
punctured intervals all live here.

Angles that the algebra forces onto the lattice (pi/p)*Z are certified with
exact integer arithmetic in Z[zeta_2p] (see exact_arg_lattice_index), never
by floating-point proximity alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import mpmath as mp

from .core import AffineMap, Subset, orbit_catalog, prime_context

DEFAULT_PRECISION = 256
MAX_PRECISION = 4096
GUARD_BITS = 32


class PrecisionError(RuntimeError):
    """Raised when escalation hits MAX_PRECISION without resolving a margin."""


@lru_cache(maxsize=64)
def _unit_table(p: int, work_prec: int) -> tuple[tuple[mp.mpf, mp.mpf], ...]:
    """(cos, sin) of 2*pi*j/p for j = 0..p-1 at the given precision."""
    with mp.workprec(work_prec):
        tau = 2 * mp.pi
        return tuple(
            (mp.cos(tau * j / p), mp.sin(tau * j / p)) for j in range(p)
        )


def _coeff_error(a: int, work_prec: int) -> mp.mpf:
    # conservative static bound: a table lookups with <= 2^(-w+3) per
    # component plus accumulation rounding <= a^2 * 2^(-w), times sqrt(2)
    return mp.ldexp(mp.mpf(3 * a * a + 16 * a + 16), -work_prec)


@dataclass(frozen=True)
class FourierProfile:
    """All p indicator coefficients of one subset, in polar form.

    coeffs[g] = (magnitude, argument) with the argument normalized to
    [0, 2*pi); err bounds the complex-plane distance of every entry from the
    true coefficient.  precision is the requested target; work_prec is the
    actual mpmath precision used.
    """

    subset: Subset
    precision: int
    work_prec: int
    err: mp.mpf
    coeffs: tuple[tuple[mp.mpf, mp.mpf], ...]

    @property
    def p(self) -> int:
        return self.subset.p

    def magnitude(self, gamma: int) -> mp.mpf:
        return self.coeffs[gamma % self.p][0]

    def argument(self, gamma: int) -> mp.mpf:
        return self.coeffs[gamma % self.p][1]

    def complex_coeff(self, gamma: int) -> mp.mpc:
        r, th = self.coeffs[gamma % self.p]
        with mp.workprec(self.work_prec):
            return mp.mpc(r * mp.cos(th), r * mp.sin(th))

    def argument_error(self, gamma: int) -> mp.mpf:
        """Bound on the argument error; infinite if the coefficient is too small."""
        r = self.magnitude(gamma)
        with mp.workprec(self.work_prec):
            if r <= 2 * self.err:
                return mp.inf
            return self.err / (r - self.err)

    def to_json(self) -> dict:
        digits = int(self.precision * 0.302) + 4
        return {
            "p": self.p,
            "set": self.subset.to_json(),
            "precision": self.precision,
            "err": mp.nstr(self.err, 8),
            "coeffs": [
                {"magnitude": mp.nstr(r, digits), "argument": mp.nstr(th, digits)}
                for r, th in self.coeffs
            ],
        }


def dft_indicator(a: Subset, precision: int = DEFAULT_PRECISION) -> FourierProfile:
    """Indicator coefficients of a at >= precision bits with an error bound."""
    p = a.p
    w = precision + GUARD_BITS
    table = _unit_table(p, w)
    members = a.members()
    coeffs: list[tuple[mp.mpf, mp.mpf]] = []
    with mp.workprec(w):
        zero = mp.mpf(0)
        coeffs.append((mp.mpf(len(members)), zero))
        for g in range(1, p):
            re = zero
            im = zero
            for x in members:
                c, s = table[(-x * g) % p]
                re += c
                im += s
            r = mp.hypot(re, im)
            th = mp.atan2(im, re)
            if th < 0:
                th += 2 * mp.pi
            coeffs.append((r, th))
        err = _coeff_error(len(members), w)
    return FourierProfile(a, precision, w, err, tuple(coeffs))


def rho(a: Subset, precision: int = DEFAULT_PRECISION) -> mp.mpf:
    """Largest nontrivial coefficient magnitude max_{g != 0} |hat1_A(g)|."""
    prof = dft_indicator(a, precision)
    return max(prof.magnitude(g) for g in range(1, a.p))


def _top_cluster(pairs: Sequence[tuple[mp.mpf, object]], err: mp.mpf) -> list | None:
    """Keys tied (within 4*err) for the maximum, or None when the boundary
    gap does not clear 10*err."""
    ranked = sorted(pairs, key=lambda kv: kv[0], reverse=True)
    top_val = ranked[0][0]
    cluster = []
    for val, key in ranked:
        if top_val - val <= 4 * err:
            cluster.append(key)
        elif top_val - val > 10 * err:
            break
        else:
            return None
    return cluster


def _descending_clusters(pairs: Sequence[tuple[mp.mpf, object]], err: mp.mpf) -> list | None:
    """Group equal values (within 4*err) separated by gaps > 10*err; None if
    any adjacent difference falls in the ambiguous band."""
    ranked = sorted(pairs, key=lambda kv: kv[0], reverse=True)
    clusters: list[list] = [[ranked[0]]]
    for prev, cur in zip(ranked, ranked[1:]):
        diff = prev[0] - cur[0]
        if diff <= 4 * err:
            clusters[-1].append(cur)
        elif diff > 10 * err:
            clusters.append([cur])
        else:
            return None
    for cl in clusters:
        if cl[0][0] - cl[-1][0] > 4 * err:
            return None
    return clusters


@dataclass(frozen=True)
class SpectralLevels:
    """Top distinct coefficient-magnitude levels across the (p, a) orbits."""

    p: int
    a: int
    levels: tuple[mp.mpf, ...]  # m_1 > m_2 > ... (depth entries or fewer)
    attainers: tuple[tuple[tuple[Subset, tuple[int, ...]], ...], ...]
    err: mp.mpf
    precision: int
    min_gap_over_err: float

    def to_json(self) -> dict:
        digits = int(self.precision * 0.302) + 4
        return {
            "p": self.p,
            "a": self.a,
            "levels": [mp.nstr(v, digits) for v in self.levels],
            "attainers": [
                [{"rep": rep.to_json(), "frequencies": list(gs)} for rep, gs in level]
                for level in self.attainers
            ],
            "err": mp.nstr(self.err, 8),
            "precision": self.precision,
            "min_gap_over_err": self.min_gap_over_err,
        }


def spectral_levels(
    p: int,
    a: int,
    depth: int = 3,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = MAX_PRECISION,
) -> SpectralLevels:
    """Distinct values of rho across orbit representatives, largest first.

    Escalates precision (doubling) until every kept level is separated from
    its neighbours by more than 10x the coefficient error bound; raises
    PrecisionError if MAX_PRECISION cannot resolve the gaps.
    """
    if not 1 <= a <= p - 1:
        raise ValueError(f"need 1 <= a <= p-1 for nontrivial spectra, got a={a}")
    catalog = orbit_catalog(p, a)
    prec = precision
    while True:
        profiles = [dft_indicator(rep, prec) for rep in catalog.reps]
        err = profiles[0].err
        rho_pairs = []
        attain: dict[int, tuple[int, ...]] = {}
        ambiguous = False
        with mp.workprec(profiles[0].work_prec):
            for idx, prof in enumerate(profiles):
                mags = [(prof.magnitude(g), g) for g in range(1, p)]
                top = _top_cluster(mags, err)
                if top is None:
                    ambiguous = True
                    break
                attain[idx] = tuple(sorted(top))
                rho_pairs.append((max(m for m, _ in mags), idx))
            if not ambiguous:
                clusters = _descending_clusters(rho_pairs, err)
                ambiguous = clusters is None
        if ambiguous:
            prec *= 2
            if prec > max_precision:
                raise PrecisionError(
                    f"spectral gaps for p={p}, a={a} unresolved at {max_precision} bits"
                )
            continue
        keep = clusters[: min(depth, len(clusters))]
        with mp.workprec(profiles[0].work_prec):
            gaps = []
            for i in range(len(clusters) - 1):
                if i < len(keep):
                    gaps.append(clusters[i][-1][0] - clusters[i + 1][0][0])
            min_gap = min(gaps) if gaps else mp.inf
            ratio = float(min_gap / err) if mp.isfinite(min_gap) else float("inf")
        levels = tuple(cl[0][0] for cl in keep)
        attainers = tuple(
            tuple((catalog.reps[idx], attain[idx]) for _, idx in cl) for cl in keep
        )
        return SpectralLevels(p, a, levels, attainers, err, prec, ratio)


def interval_secondary_peak(p: int, a: int, precision: int = DEFAULT_PRECISION) -> mp.mpf:
    """max_{g in [2, p-2]} |hat1_{[a]}(g)|: the interval's runner-up magnitude."""
    prof = dft_indicator(Subset.interval(p, a), precision)
    return max(prof.magnitude(g) for g in range(2, p - 1))


# --- exact lattice-angle certification --------------------------------------


def _reflection_difference_vanishes(a: Subset, gamma: int, n: int) -> bool:
    """Exact test of arg(hat1_A(gamma)) = n*pi/p, i.e. hat1 * zeta^{-n} real,
    done in Z[zeta_2p] (zeta = exp(i*pi/p)): the difference with its
    conjugate must reduce to zero modulo the 2p-th cyclotomic polynomial."""
    p = a.p
    two_p = 2 * p
    c = [0] * two_p
    for x in a.members():
        c[(-2 * x * gamma - n) % two_p] += 1
        c[(2 * x * gamma + n) % two_p] -= 1
    for e in range(p, two_p):  # zeta^e = -zeta^(e-p)
        c[e - p] -= c[e]
    g = c[:p]
    lead = g[p - 1]
    if lead == 0:
        return all(v == 0 for v in g)
    # subtract lead * Phi_2p, whose X^i coefficient is (-1)^i
    return all(g[i] == lead * (-1) ** i for i in range(p))


def exact_arg_lattice_index(
    a: Subset, gamma: int, precision: int = 192
) -> int | None:
    """n in [0, 2p) with arg(hat1_A(gamma)) exactly n*pi/p, else None.

    The candidate n comes from a numeric argument; membership is then decided
    by exact integer arithmetic, so the answer does not depend on margins.
    """
    p = a.p
    if a.size in (0, p):
        raise ValueError("coefficients of the empty/full set carry no direction")
    prec = precision
    while True:
        prof = dft_indicator(a, prec)
        r, th = prof.coeffs[gamma % p]
        with mp.workprec(prof.work_prec):
            if r > 32 * prof.err:
                q = th * p / mp.pi
                n = int(mp.nint(q)) % (2 * p)
                break
        prec *= 2
        if prec > MAX_PRECISION:
            raise PrecisionError("coefficient too small to locate its argument")
    return n if _reflection_difference_vanishes(a, gamma, n) else None


# --- primary image and projection scores ------------------------------------


def primary_image(
    d: Subset,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = MAX_PRECISION,
) -> tuple[Subset, AffineMap]:
    """Affine image g*D + l whose frequency-1 coefficient realizes rho(D)
    with argument in (-pi/p, pi/p].

    Among the frequencies attaining the peak magnitude the smallest is used;
    the translate l is chosen from the argument, with the lattice boundary
    (odd multiples of pi/p) decided by the exact integer test.
    """
    p = d.p
    if not 1 <= d.size <= p - 1:
        raise ValueError("primary image needs a nonempty proper subset")
    prec = precision
    while True:
        prof = dft_indicator(d, prec)
        err = prof.err
        with mp.workprec(prof.work_prec):
            mags = [(prof.magnitude(g), g) for g in range(1, p)]
            top = _top_cluster(mags, err)
            if top is None:
                prec *= 2
                if prec > max_precision:
                    raise PrecisionError("peak frequencies unresolved")
                continue
            gamma = min(top)
            r, th = prof.coeffs[gamma]
            q = th * p / mp.pi  # argument in lattice units
            n = int(mp.nint(q)) % (2 * p)
            lattice = _reflection_difference_vanishes(d, gamma, n)
            if lattice:
                ell = n // 2 if n % 2 == 0 else (n - 1) // 2
            else:
                dist = abs(q - mp.nint(q)) * mp.pi / p
                if not dist > 10 * prof.argument_error(gamma):
                    prec *= 2
                    if prec > max_precision:
                        raise PrecisionError("argument too close to the lattice")
                    continue
                ell = int(mp.nint(th * p / (2 * mp.pi))) % p
        image = d.dilate(gamma).translate(ell)
        m = AffineMap(p, gamma, ell)
        if __debug__:
            check = dft_indicator(image, prec)
            with mp.workprec(check.work_prec):
                assert abs(check.magnitude(1) - r) <= 6 * err
                th1 = check.argument(1)
                if th1 > mp.pi:
                    th1 -= 2 * mp.pi
                assert th1 <= mp.pi / p + 10 * err
                assert th1 > -(mp.pi / p) - 10 * err
        return image, m


@dataclass(frozen=True)
class ProjectionRanking:
    """Residues ranked by h(j) = cos(2*pi*j/p + theta), ties grouped.

    theta is the frequency-1 argument of a primary set, folded to
    (-pi, pi]; lattice_index is 0 / +-1 when theta is exactly 0 or +-pi/p
    (certified), else None.  top_sets lists every size-a maximizer of the
    summed scores; punctured_candidates are the two runner-up shapes.
    """

    subset: Subset
    theta: mp.mpf
    lattice_index: int | None
    groups: tuple[tuple[int, ...], ...]
    scores: dict[int, mp.mpf]
    top_sets: tuple[Subset, ...]
    punctured_candidates: tuple[Subset, ...]
    err: mp.mpf
    precision: int

    def score(self, e: Subset) -> mp.mpf:
        with mp.workprec(self.precision + GUARD_BITS):
            return mp.fsum(self.scores[j] for j in e.members())

    def flat_order(self) -> tuple[int, ...]:
        return tuple(j for group in self.groups for j in group)


def projection_scores(
    d_pri: Subset, precision: int = DEFAULT_PRECISION
) -> ProjectionRanking:
    """Ranking of cos(2*pi*j/p + theta) for a primary set.

    For theta strictly inside (0, pi/p) the order is 0 > -1 > 1 > -2 > 2 ...;
    for theta in (-pi/p, 0) it is 0 > 1 > -1 > 2 > -2 ...; theta = 0 ties
    {m, -m}; theta = pi/p ties {j, -j-1}; theta = -pi/p ties {j, 1-j}.
    The numeric ordering is re-verified with margins at the working precision.
    """
    p = d_pri.p
    a = d_pri.size
    if not 1 <= a <= p - 1:
        raise ValueError("projection scores need a nonempty proper subset")
    half = (p - 1) // 2
    n = exact_arg_lattice_index(d_pri, 1)
    prec = precision
    while True:
        prof = dft_indicator(d_pri, prec)
        with mp.workprec(prof.work_prec):
            th = prof.argument(1)
            if th > mp.pi:
                th -= 2 * mp.pi
            if n is None and not abs(th) < mp.pi / p:
                raise ValueError("set is not primary: argument outside (-pi/p, pi/p]")
            if n is not None and n % (2 * p) not in (0, 1, 2 * p - 1):
                raise ValueError("set is not primary: lattice argument beyond +-pi/p")
            if n is not None:
                n_fold = n % (2 * p)
                if n_fold == 0:
                    groups = [(0,)] + [(m, p - m) for m in range(1, half + 1)]
                elif n_fold == 1:
                    groups = [((j) % p, (-j - 1) % p) for j in range(0, half)]
                    groups.append((half,))
                else:  # theta = -pi/p
                    groups = [((j) % p, (1 - j) % p) for j in range(0, -half, -1)]
                    groups.append(((half + 1) % p,))
            elif th > 0:
                seq = [0]
                for m in range(1, half + 1):
                    seq.extend([-m % p, m])
                groups = [(j,) for j in seq]
            else:
                seq = [0]
                for m in range(1, half + 1):
                    seq.extend([m, -m % p])
                groups = [(j,) for j in seq]
            scores = {j: mp.cos(2 * mp.pi * j / p + th) for j in range(p)}
            # verify the claimed pattern at this precision
            h_err = prof.argument_error(1) + mp.ldexp(mp.mpf(8), -prof.work_prec)
            ok = True
            flat = [j for g in groups for j in g]
            for g in groups:
                for u, v in zip(g, g[1:]):
                    if not abs(scores[u] - scores[v]) <= 4 * h_err:
                        ok = False
            for u, v in zip(flat, flat[1:]):
                same = any(u in g and v in g for g in groups)
                if not same and not scores[u] - scores[v] > 10 * h_err:
                    ok = False
            if ok:
                break
        prec *= 2
        if prec > MAX_PRECISION:
            raise PrecisionError("projection ordering unresolved")

    # maximizing a-sets: fill whole groups, enumerate choices in a split group
    top_sets: list[Subset] = []
    chosen: list[int] = []
    remaining = a
    gi = 0
    while remaining and len(groups[gi]) <= remaining:
        chosen.extend(groups[gi])
        remaining -= len(groups[gi])
        gi += 1
    if remaining == 0:
        top_sets.append(Subset.from_residues(p, chosen))
    else:
        for pick in combinations(groups[gi], remaining):
            top_sets.append(Subset.from_residues(p, chosen + list(pick)))
    cand1 = Subset.from_residues(p, flat[: a - 1] + [flat[a + 1]])
    cand2 = Subset.from_residues(p, flat[: a - 2] + flat[a - 1 : a + 1])
    return ProjectionRanking(
        d_pri,
        th,
        n if n is None else n % (2 * p),
        tuple(tuple(g) for g in groups),
        scores,
        tuple(top_sets),
        (cand1, cand2),
        prof.err,
        prec,
    )


# --- spectral form of the tuple count ----------------------------------------


@dataclass(frozen=True)
class FValue:
    """p*s_k(A) - a^(k+1), evaluated spectrally with a rigorous error bound."""

    subset: Subset
    k: int
    value: mp.mpf
    err: mp.mpf
    work_prec: int

    def to_json(self) -> dict:
        return {
            "set": self.subset.to_json(),
            "k": self.k,
            "value": mp.nstr(self.value, 24),
            "err": mp.nstr(self.err, 8),
            "work_prec": self.work_prec,
        }


def F_value(a: Subset, k: int, precision: int = DEFAULT_PRECISION) -> FValue:
    """sum_{g != 0} hat1_A(g)^k * conj(hat1_A(g)) as a real number.

    Magnitudes are raised to the k+1 power as mpf values (arbitrary exponent,
    so k up to 10^6 cannot overflow); the working precision grows with
    bit_length(k) so the angle (k-1)*theta keeps absolute accuracy.  The
    returned err bounds |value - F(A)| and also exceeds the computed
    imaginary part, which is checked to vanish.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    p = a.p
    w = precision + 2 * k.bit_length() + 2 * GUARD_BITS
    prof = dft_indicator(a, w - GUARD_BITS)
    err = prof.err
    with mp.workprec(w):
        total_re = mp.mpf(0)
        total_im = mp.mpf(0)
        bound = mp.mpf(0)
        slop = mp.ldexp(mp.mpf(1), -w + 6)
        for g in range(1, p):
            r, th = prof.coeffs[g]
            r_hi = r + err
            mag = r ** (k + 1)
            mag_hi = r_hi ** (k + 1)
            ang = (k - 1) * th
            total_re += mag * mp.cos(ang)
            total_im += mag * mp.sin(ang)
            if r > 2 * err:
                th_err = err / (r - err)
                bound += (k + 1) * (r_hi**k) * err + mag_hi * ((k - 1) * th_err + slop)
            else:
                bound += 2 * mag_hi + (k + 1) * (r_hi**k) * err
        bound += (p - 1) * slop * max(mp.mpf(1), total_re, -total_re, total_im, -total_im)
        if not abs(total_im) <= bound:
            raise PrecisionError("spectral sum failed its own reality bound")
    return FValue(a, k, total_re, bound, w)


# --- optimal interval translates (pure integer arithmetic) -------------------


def translate_phase_index(p: int, a: int, k: int, t: int) -> int:
    """m in [0, 2p) with the dominant-term phase of [a]+t equal to pi*m/p."""
    return (-(2 * t + a - 1) * (k - 1)) % (2 * p)


def optimal_t(p: int, a: int, k: int) -> frozenset[int]:
    """Translates t making the dominant spectral term of [a]+t most negative.

    For (a-1)(k-1) even the reachable phases are the even multiples of pi/p
    and two translates tie at pi +- pi/p (each the reflection of the other);
    otherwise the phases are the odd multiples and t with phase exactly pi is
    unique.  Exact integer arithmetic throughout.  k = 1 mod p is rejected:
    translates are then equivalent and no direction is preferred.
    """
    ctx = prime_context(p)
    if not 1 <= a <= p - 1:
        raise ValueError(f"need 1 <= a <= p-1, got a={a}")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if k % p == 1:
        raise ValueError("k = 1 mod p leaves all translates equivalent")
    big_k = k - 1
    m0 = (-(a - 1) * big_k) % (2 * p)
    inv = ctx.inv[big_k % p]
    targets = (p,) if m0 % 2 == 1 else (p + 1, p - 1)
    out = set()
    for target in targets:
        diff = (m0 - target) % (2 * p)
        assert diff % 2 == 0
        t = (diff // 2) * inv % p
        assert translate_phase_index(p, a, k, t) == target
        out.add(t)
    if len(targets) == 2:
        ts = sorted(out)
        assert {(-(a - 1) - t) % p for t in ts} == out
    return frozenset(out)


# --- punctured-interval angle check ------------------------------------------


@dataclass(frozen=True)
class AngleCheck:
    """Lattice-avoidance data for the frequency-1 argument of [a-1] u {a}."""

    p: int
    a: int
    distance: mp.mpf  # distance of the argument to (pi/p) * Z
    angle_err: mp.mpf
    nearest_index: int
    exact_nonlattice: bool
    passed: bool
    branch_size: int  # min(a, p-a): the side whose window claim is checked
    branch_parity: str
    branch_argument: mp.mpf
    branch_ok: bool
    precision: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "distance": mp.nstr(self.distance, 12),
            "angle_err": mp.nstr(self.angle_err, 8),
            "nearest_index": self.nearest_index,
            "exact_nonlattice": self.exact_nonlattice,
            "passed": self.passed,
            "branch_size": self.branch_size,
            "branch_parity": self.branch_parity,
            "branch_argument": mp.nstr(self.branch_argument, 12),
            "branch_ok": self.branch_ok,
            "precision": self.precision,
        }


def angle_check_punctured(p: int, a: int, precision: int = DEFAULT_PRECISION) -> AngleCheck:
    """Certify that arg(hat1 of [a-1] u {a} at frequency 1) avoids (pi/p)*Z.

    Non-membership is certified exactly in Z[zeta_2p]; the reported distance
    must additionally clear 10x the angle error bound.  The sign-and-interval
    claim is checked on the shifted set of size b = min(a, p-a) (for
    a > (p-1)/2 the complement of the punctured interval is an equivalent
    punctured interval of size p-a, which is the side the argument places in
    an open interval):  b odd expects (0, pi/p), b even expects (-pi/p, 0).
    """
    prime_context(p)
    if p < 7 or not 3 <= a <= p - 3:
        raise ValueError(f"need p >= 7 and 3 <= a <= p-3, got p={p}, a={a}")
    punct = Subset.punctured_interval(p, a)
    n = exact_arg_lattice_index(punct, 1)
    exact_nonlattice = n is None
    prof = dft_indicator(punct, precision)
    b = min(a, p - a)
    if b % 2 == 1:
        m = (b - 1) // 2
        branch_set = Subset.from_residues(p, [-m - 1] + list(range(-m + 1, m + 1)))
        parity = "odd"
    else:
        m = (b - 2) // 2
        branch_set = Subset.from_residues(p, [-m - 1] + list(range(-m + 1, m + 2)))
        parity = "even"
    assert branch_set.size == b
    branch_prof = dft_indicator(branch_set, precision)
    with mp.workprec(prof.work_prec):
        th = prof.argument(1)
        q = th * p / mp.pi
        nearest = int(mp.nint(q)) % (2 * p)
        distance = abs(q - mp.nint(q)) * mp.pi / p
        angle_err = prof.argument_error(1)
        passed = exact_nonlattice and distance > 10 * angle_err
        th_b = branch_prof.argument(1)
        if th_b > mp.pi:
            th_b -= 2 * mp.pi
        margin = 10 * branch_prof.argument_error(1)
        if parity == "odd":
            branch_ok = bool(th_b > margin and th_b < mp.pi / p - margin)
        else:
            branch_ok = bool(th_b < -margin and th_b > -mp.pi / p + margin)
    return AngleCheck(
        p, a, distance, angle_err, nearest, exact_nonlattice,
        bool(passed), b, parity, th_b, branch_ok, precision,
    )


# --- sign windows for k = s*p + 1 ---------------------------------------------


@dataclass(frozen=True)
class TGoodPoint:
    t: int
    s: int
    k: int
    cos_sign: int  # sign of cos(s*p*theta) = (-1)^t
    dominant: bool  # dominant term provably outweighs every competing tail

    def to_json(self) -> dict:
        return {"t": self.t, "s": self.s, "k": self.k,
                "cos_sign": self.cos_sign, "dominant": self.dominant}


@dataclass(frozen=True)
class TGoodScan:
    """Exponents k = s*p + 1 with a sign-pinned dominant spectral term.

    c = p*theta - ell*pi folded into (-pi, pi) with ell even; s is t-good when
    s*c lies in ((t - 1/2)*pi + eps, (t + 1/2)*pi - eps), which pins the sign
    of cos(s*p*theta) to (-1)^t.
    """

    p: int
    a: int
    theta: mp.mpf
    ell: int
    c: mp.mpf
    eps: mp.mpf
    points: tuple[TGoodPoint, ...]
    precision: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "theta": mp.nstr(self.theta, 20),
            "ell": self.ell,
            "c": mp.nstr(self.c, 20),
            "eps": mp.nstr(self.eps, 20),
            "points": [pt.to_json() for pt in self.points],
            "precision": self.precision,
        }


def t_good_scan(
    p: int,
    a: int,
    t_range: Iterable[int],
    s_max: int | None = None,
    precision: int = DEFAULT_PRECISION,
) -> TGoodScan:
    """Smallest t-good s for each t in t_range with sign(t) = sign(c).

    Each point carries the predicted sign of the dominant term of the
    spectral sum for the punctured interval at k = s*p + 1 and a dominance
    flag: True when 2*m2^(k+1)*sin(eps) provably exceeds the punctured
    interval's own secondary tail plus (p-1)*m3^(k+1) for every third-orbit
    competitor (m3 = 0 when only two orbits exist).
    """
    check = angle_check_punctured(p, a, precision)
    if not check.passed:
        raise PrecisionError(f"lattice avoidance unresolved for p={p}, a={a}")
    punct = Subset.punctured_interval(p, a)
    prof = dft_indicator(punct, precision)
    levels = spectral_levels(p, a, depth=3, precision=precision)
    m3 = levels.levels[2] if len(levels.levels) >= 3 else mp.mpf(0)
    points: list[TGoodPoint] = []
    with mp.workprec(prof.work_prec):
        th = prof.argument(1)
        q = th * p / mp.pi
        ell = 2 * int(mp.nint(q / 2))
        c = (q - ell) * mp.pi  # = p*theta - ell*pi
        assert abs(c) < mp.pi and c != 0
        eps = min(abs(c), mp.pi - abs(c)) / 3
        m2 = prof.magnitude(1)
        for t in t_range:
            if t == 0 or (t > 0) != (c > 0):
                continue
            lo = (t - mp.mpf(1) / 2) * mp.pi + eps
            hi = (t + mp.mpf(1) / 2) * mp.pi - eps
            if c > 0:
                s = int(mp.floor(lo / c)) + 1
                good = s >= 1 and s * c < hi
            else:
                s = int(mp.floor(hi / c)) + 1
                good = s >= 1 and s * c > lo
            if not good:
                continue
            if s_max is not None and s > s_max:
                continue
            assert lo < s * c < hi
            k = s * p + 1
            sign = 1 if t % 2 == 0 else -1
            cos_val = mp.cos(s * p * th)
            assert (cos_val > 0) == (sign > 0) and abs(cos_val) >= mp.sin(eps) / 2
            lead = 2 * (m2 ** (k + 1)) * mp.sin(eps)
            competing = (p - 1) * (m3 ** (k + 1)) if m3 > 0 else mp.mpf(0)
            own_tail = mp.fsum(prof.magnitude(g) ** (k + 1) for g in range(2, p - 1))
            dominant = bool(lead > competing + own_tail)
            points.append(TGoodPoint(t, s, k, sign, dominant))
    return TGoodScan(p, a, th, ell, c, eps, tuple(points), precision)
