"""Residue arithmetic, affine maps, and subset orbits in Z_p for odd primes p < 64.

Subsets are p-bit membership words packed into a Python int (bit x set iff
residue x is a member), so translation is a bit rotation and set algebra is
word arithmetic.  The affine group {x -> xi*x + eta : xi != 0} acts on
subsets; canonical_form picks the lexicographically smallest membership word
in an orbit, and build_orbit_catalog enumerates all orbits of a-subsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

VERSION = "0.1.0"  # participates in result-cache keys; bump on count-affecting changes

MAX_P = 64  # subsets must fit a machine-word-sized membership word
ORBIT_ENUM_GUARD = 10**8  # refuse catalogs with more than this many subsets


class SizeGuardError(ValueError):
    """Raised when a request exceeds the supported problem size."""


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeContext:
    """Validated odd prime p with its inverse table."""

    p: int
    inv: tuple[int, ...]  # inv[x] = x^{-1} mod p for x in 1..p-1; inv[0] = 0

    @property
    def full_mask(self) -> int:
        return (1 << self.p) - 1


@lru_cache(maxsize=None)
def prime_context(p: int) -> PrimeContext:
    if not isinstance(p, int) or not is_odd_prime(p) or p >= MAX_P:
        raise SizeGuardError(f"p must be an odd prime in [3, {MAX_P}), got {p!r}")
    inv = tuple(pow(x, p - 2, p) if x else 0 for x in range(p))
    return PrimeContext(p, inv)


@dataclass(frozen=True)
class AffineMap:
    """x -> xi*x + eta mod p, with xi != 0."""

    p: int
    xi: int
    eta: int

    def __post_init__(self) -> None:
        prime_context(self.p)
        object.__setattr__(self, "xi", self.xi % self.p)
        object.__setattr__(self, "eta", self.eta % self.p)
        if self.xi == 0:
            raise ValueError("affine map needs an invertible multiplier")

    @classmethod
    def identity(cls, p: int) -> "AffineMap":
        return cls(p, 1, 0)

    def __call__(self, x: int) -> int:
        return (self.xi * x + self.eta) % self.p

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: x -> self(other(x))."""
        if self.p != other.p:
            raise ValueError("mismatched moduli")
        return AffineMap(self.p, self.xi * other.xi, self.xi * other.eta + self.eta)

    def inverse(self) -> "AffineMap":
        inv = prime_context(self.p).inv[self.xi]
        return AffineMap(self.p, inv, -inv * self.eta)


def _rotate(mask: int, t: int, p: int, full: int) -> int:
    # translate members by +t: bit x moves to x+t mod p
    t %= p
    if t == 0:
        return mask
    return ((mask << t) | (mask >> (p - t))) & full


def _dilate_mask(mask: int, xi: int, p: int) -> int:
    out = 0
    m = mask
    while m:
        low = m & -m
        x = low.bit_length() - 1
        out |= 1 << (xi * x % p)
        m ^= low
    return out


@dataclass(frozen=True, order=True)
class Subset:
    """Subset of Z_p as a p-bit membership word."""

    p: int
    mask: int

    def __post_init__(self) -> None:
        ctx = prime_context(self.p)
        if not 0 <= self.mask <= ctx.full_mask:
            raise ValueError(f"mask {self.mask:#x} out of range for p={self.p}")

    # --- constructors -----------------------------------------------------

    @classmethod
    def from_residues(cls, p: int, residues: Iterable[int]) -> "Subset":
        mask = 0
        for x in residues:
            mask |= 1 << (x % p)
        return cls(p, mask)

    @classmethod
    def interval(cls, p: int, length: int, start: int = 0) -> "Subset":
        """{start, start+1, ..., start+length-1} mod p."""
        if not 0 <= length <= p:
            raise ValueError(f"interval length {length} out of range for p={p}")
        base = (1 << length) - 1
        return cls(p, _rotate(base, start, p, (1 << p) - 1))

    @classmethod
    def punctured_interval(cls, p: int, a: int) -> "Subset":
        """{0, ..., a-2} + {a}: an (a+1)-interval missing its penultimate point."""
        if not 2 <= a <= p - 1:
            raise ValueError(f"punctured interval needs 2 <= a <= p-1, got a={a}")
        return cls(p, ((1 << (a - 1)) - 1) | (1 << a))

    @classmethod
    def empty(cls, p: int) -> "Subset":
        return cls(p, 0)

    @classmethod
    def full(cls, p: int) -> "Subset":
        return cls(p, (1 << p) - 1)

    # --- basic queries ----------------------------------------------------

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def members(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.p) if self.mask >> x & 1)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> (x % self.p) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    # --- set algebra --------------------------------------------------------

    def complement(self) -> "Subset":
        return Subset(self.p, self.mask ^ prime_context(self.p).full_mask)

    def union(self, other: "Subset") -> "Subset":
        if self.p != other.p:
            raise ValueError("mismatched moduli")
        return Subset(self.p, self.mask | other.mask)

    def intersection(self, other: "Subset") -> "Subset":
        if self.p != other.p:
            raise ValueError("mismatched moduli")
        return Subset(self.p, self.mask & other.mask)

    # --- group actions ------------------------------------------------------

    def translate(self, t: int) -> "Subset":
        full = prime_context(self.p).full_mask
        return Subset(self.p, _rotate(self.mask, t, self.p, full))

    def dilate(self, xi: int) -> "Subset":
        xi %= self.p
        if xi == 0:
            raise ValueError("dilation by 0 is not invertible")
        return Subset(self.p, _dilate_mask(self.mask, xi, self.p))

    def reflect(self) -> "Subset":
        return self.dilate(self.p - 1)

    def apply(self, m: AffineMap) -> "Subset":
        if m.p != self.p:
            raise ValueError("mismatched moduli")
        return self.dilate(m.xi).translate(m.eta)

    def is_interval(self) -> bool:
        """Cyclically contiguous (empty, full, and singletons count)."""
        a = self.size
        if a in (0, self.p):
            return True
        full = prime_context(self.p).full_mask
        base = (1 << a) - 1
        return any(_rotate(base, t, self.p, full) == self.mask for t in range(self.p))

    def arith_prog_differences(self) -> tuple[int, ...]:
        """All d != 0 such that the set is {x, x+d, ..., x+(size-1)d}."""
        ctx = prime_context(self.p)
        out = []
        for d in range(1, self.p):
            if Subset(self.p, _dilate_mask(self.mask, ctx.inv[d], self.p)).is_interval():
                out.append(d)
        return tuple(out)

    # --- canonical forms ------------------------------------------------------

    def canonical(self) -> "Subset":
        return Subset(self.p, _canonical_mask(self.p, self.mask))

    def dilation_class_canonical(self) -> "Subset":
        """Smallest membership word among the p-1 dilations (no translation)."""
        best = min(_dilate_mask(self.mask, xi, self.p) for xi in range(1, self.p))
        return Subset(self.p, best)

    # --- serialization ------------------------------------------------------

    def to_json(self) -> list[int]:
        return list(self.members())

    def __repr__(self) -> str:
        return f"Subset(p={self.p}, {{{', '.join(map(str, self.members()))}}})"


def apply_affine(m: AffineMap, a: Subset) -> Subset:
    return a.apply(m)


def _canonical_mask(p: int, mask: int) -> int:
    full = (1 << p) - 1
    best = full + 1
    for xi in range(1, p):
        d = _dilate_mask(mask, xi, p)
        for t in range(p):
            r = _rotate(d, t, p, full)
            if r < best:
                best = r
    return best


def canonical_form(a: Subset) -> Subset:
    """Lexicographically smallest membership word over the p(p-1) affine images."""
    return a.canonical()


def subset_masks_of_size(p: int, a: int) -> Iterator[int]:
    """All a-subsets of Z_p as masks, in increasing word order (Gosper).

    Guarded eagerly: C(p, a) must stay enumerable (<= 10^8)."""
    total = math.comb(p, a)
    if total > ORBIT_ENUM_GUARD:
        raise SizeGuardError(f"C({p},{a}) = {total} exceeds the enumeration guard")
    return _gosper_masks(p, a)


def _gosper_masks(p: int, a: int) -> Iterator[int]:
    if a == 0:
        yield 0
        return
    limit = 1 << p
    v = (1 << a) - 1
    while v < limit:
        yield v
        low = v & -v
        ripple = v + low
        v = ripple | (((v ^ ripple) >> 2) // low)


@dataclass(frozen=True)
class OrbitCatalog:
    """All affine orbits of a-subsets of Z_p."""

    p: int
    a: int
    reps: tuple[Subset, ...]  # canonical representative per orbit, ascending masks
    orbit_sizes: tuple[int, ...]
    index: dict[int, int] = field(repr=False)  # mask -> position in reps

    @property
    def stabilizer_orders(self) -> tuple[int, ...]:
        g = self.p * (self.p - 1)
        return tuple(g // s for s in self.orbit_sizes)

    def rep_of(self, a: Subset) -> Subset:
        if a.p != self.p or a.size != self.a:
            raise ValueError("subset does not belong to this catalog")
        return self.reps[self.index[a.mask]]

    def rep_index_of(self, a: Subset) -> int:
        return self.index[a.canonical().mask]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "orbit_count": len(self.reps),
            "reps": [r.to_json() for r in self.reps],
            "orbit_sizes": list(self.orbit_sizes),
            "stabilizer_orders": list(self.stabilizer_orders),
        }


def build_orbit_catalog(p: int, a: int) -> OrbitCatalog:
    """Partition all a-subsets of Z_p into affine orbits (single-threaded sweep).

    Masks are visited in increasing order, so the first unvisited mask of an
    orbit is its canonical representative.
    """
    ctx = prime_context(p)
    if not 0 <= a <= p:
        raise ValueError(f"subset size {a} out of range for p={p}")
    total = math.comb(p, a)
    if total > ORBIT_ENUM_GUARD:
        raise SizeGuardError(f"C({p},{a}) = {total} exceeds the enumeration guard")
    full = ctx.full_mask
    reps: list[Subset] = []
    sizes: list[int] = []
    index: dict[int, int] = {}
    seen: set[int] = set()
    for mask in subset_masks_of_size(p, a):
        if mask in seen:
            continue
        orbit = set()
        for xi in range(1, p):
            d = _dilate_mask(mask, xi, p)
            for t in range(p):
                orbit.add(_rotate(d, t, p, full))
        pos = len(reps)
        reps.append(Subset(p, mask))
        sizes.append(len(orbit))
        for m in orbit:
            index[m] = pos
        seen |= orbit
    assert sum(sizes) == total, "orbits must partition the a-subsets"
    return OrbitCatalog(p, a, tuple(reps), tuple(sizes), index)


@lru_cache(maxsize=24)
def orbit_catalog(p: int, a: int) -> OrbitCatalog:
    """Cached catalogs for the desk-scale (p, a) pairs used by searches."""
    return build_orbit_catalog(p, a)
