"""Exact tuple counting in Z_p via cyclic convolution of indicator vectors.

Everything here is integer arithmetic on Python bigints: sigma_vector gives,
for each x, the number of ordered tuples (x_1, ..., x_k) from A_1 x ... x A_k
with x_1 + ... + x_k = x; s_count sums those multiplicities over a target set
A_0, i.e. the number of ordered (k+1)-tuples with x_0 = x_1 + ... + x_k.
Entry growth is ~ a^k, so results stay exact for k up to 10^6 and beyond.
"""

from __future__ import annotations

from typing import Sequence

from .core import Subset

CountVector = tuple[int, ...]

# When enabled, s_count re-derives its answer from the nested threshold sets
# sum_{r>=1} |A_0 ∩ {x : sigma(x) >= r}| and asserts agreement.  Off by
# default: it multiplies the cost of hot search loops.
CROSS_CHECK = False


def indicator(a: Subset) -> CountVector:
    return tuple((a.mask >> x) & 1 for x in range(a.p))


def cyclic_convolve(u: CountVector, v: CountVector) -> CountVector:
    """(u * v)(x) = sum_y u(y) v(x - y), indices mod p."""
    p = len(u)
    if len(v) != p:
        raise ValueError("convolution needs equal-length vectors")
    out = [0] * p
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if vj:
                idx = i + j
                if idx >= p:
                    idx -= p
                out[idx] += ui * vj
    return tuple(out)


def sigma_vector(sets: Sequence[Subset]) -> CountVector:
    """Tuple-sum multiplicities for one set per factor (k = len(sets) >= 1)."""
    if not sets:
        raise ValueError("need at least one factor set")
    p = sets[0].p
    if any(s.p != p for s in sets):
        raise ValueError("mismatched moduli")
    acc = indicator(sets[0])
    for s in sets[1:]:
        acc = cyclic_convolve(acc, indicator(s))
    return acc


def power_sigma(a: Subset, k: int) -> CountVector:
    """k-fold convolution power of the indicator of a single set (k >= 1)."""
    if k < 1:
        raise ValueError(f"power_sigma needs k >= 1, got {k}")
    base = indicator(a)
    acc: CountVector | None = None
    while k:
        if k & 1:
            acc = base if acc is None else cyclic_convolve(acc, base)
        k >>= 1
        if k:
            base = cyclic_convolve(base, base)
    assert acc is not None
    return acc


def s_count(a0: Subset, sets: Sequence[Subset]) -> int:
    """Ordered tuples (x_0, ..., x_k) in A_0 x A_1 x ... x A_k with x_0 = sum of the rest."""
    sigma = sigma_vector(sets)
    if a0.p != len(sigma):
        raise ValueError("mismatched moduli")
    total = sum(sigma[x] for x in range(a0.p) if (a0.mask >> x) & 1)
    if CROSS_CHECK:
        alt = 0
        r = 1
        while True:
            n_r_mask = 0
            for x, cnt in enumerate(sigma):
                if cnt >= r:
                    n_r_mask |= 1 << x
            if not n_r_mask:
                break
            alt += (n_r_mask & a0.mask).bit_count()
            r += 1
        assert alt == total, "threshold-set identity violated"
    return total


def s_k_count(a: Subset, k: int) -> int:
    """s_k(A): ordered (k+1)-tuples from A^{k+1} with x_0 = x_1 + ... + x_k."""
    if k < 2:
        raise ValueError(f"s_k_count needs k >= 2, got {k}")
    sigma = power_sigma(a, k)
    return sum(sigma[x] for x in range(a.p) if (a.mask >> x) & 1)


def count_vector_to_json(v: CountVector) -> list[str]:
    """Entries as decimal strings: they routinely exceed 2^53."""
    return [str(x) for x in v]


def count_vector_from_json(items: Sequence[str]) -> CountVector:
    return tuple(int(x) for x in items)
