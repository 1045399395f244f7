"""Reversed-prime censuses in arithmetic progressions.

Counts are exact, the structured main term is an exact rational obtained by
enumeration, and the density/prediction pair gives the large-N heuristic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._config import check_base, check_cap, check_positive
from .digits import GnWindow, reverse_array

_SEGMENT = 1 << 20


@dataclass(frozen=True)
class ApQuery:
    a: int
    q: int

    def __post_init__(self) -> None:
        check_positive(self.q, "q")
        object.__setattr__(self, "a", self.a % self.q)


@dataclass(frozen=True)
class CensusRecord:
    window: GnWindow
    query: ApQuery
    count: int
    main_term: Fraction
    remainder: Fraction
    rho: Fraction
    prediction: float
    n0: int

    def as_row(self) -> dict:
        return {
            "g": self.window.base,
            "N": self.window.length,
            "a": self.query.a,
            "q": self.query.q,
            "count": self.count,
            "main_term": str(self.main_term),
            "remainder": str(self.remainder),
            "rho": str(self.rho),
            "prediction": self.prediction,
            "n0": self.n0,
        }


@lru_cache(maxsize=8)
def _base_primes(limit: int) -> np.ndarray:
    """Primes below ``limit`` by a plain sieve (limit is at most sqrt(cap)+1)."""
    if limit < 3:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit - 1) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _prime_mask(lo: int, hi: int) -> np.ndarray:
    """Boolean mask ``m`` with ``m[i]`` true iff ``lo + i`` is prime."""
    mask = np.ones(hi - lo, dtype=bool)
    small = _base_primes(math.isqrt(max(hi - 1, 0)) + 1)
    for seg_lo in range(lo, hi, _SEGMENT):
        seg_hi = min(seg_lo + _SEGMENT, hi)
        seg = mask[seg_lo - lo : seg_hi - lo]
        for p in small:
            p = int(p)
            if p * p >= seg_hi:
                break
            start = max(p * p, -(-seg_lo // p) * p)
            seg[start - seg_lo :: p] = False
    for n in (0, 1):
        if lo <= n < hi:
            mask[n - lo] = False
    return mask


def sieve_primes(lo: int, hi: int) -> np.ndarray:
    """Primes in ``[lo, hi)`` via a segmented sieve of Eratosthenes."""
    if lo < 0 or hi < lo:
        raise ValueError(f"bad range [{lo}, {hi})")
    check_cap(hi, "sieve bound")
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(_prime_mask(lo, hi)).astype(np.int64) + lo


def prime_indicator(limit: int) -> np.ndarray:
    """Float indicator of the primes on ``[0, limit)`` (read-only)."""
    check_cap(limit, "prime indicator length")
    return _prime_indicator(limit)


@lru_cache(maxsize=16)
def _prime_indicator(limit: int) -> np.ndarray:
    ind = _prime_mask(0, limit).astype(np.float64)
    ind.setflags(write=False)
    return ind


@lru_cache(maxsize=16)
def _window_primes(g: int, N: int) -> tuple[np.ndarray, np.ndarray]:
    w = GnWindow(g, N)
    p = sieve_primes(w.lo, w.hi)
    p = p[p % g != 0]
    rev = reverse_array(p, g, N)
    p.setflags(write=False)
    rev.setflags(write=False)
    return p, rev


def window_primes(w: GnWindow) -> tuple[np.ndarray, np.ndarray]:
    """Primes of the window and their digital reverses (read-only arrays)."""
    check_cap(w.hi, "sieve bound")
    return _window_primes(w.base, w.length)


def residue_counts(w: GnWindow, q: int) -> np.ndarray:
    """``counts[a]`` = number of window primes whose reverse is ``a`` mod ``q``."""
    q = check_positive(q, "q")
    _, rev = window_primes(w)
    return np.bincount(rev % q, minlength=q).astype(np.int64)


def reversed_prime_count(w: GnWindow, query: ApQuery) -> int:
    return int(residue_counts(w, query.q)[query.a])


def structural_modulus(w: GnWindow, q: int) -> int:
    """gcd(q, (g^2 - 1) g^N)."""
    g = w.base
    return math.gcd(q, (g * g - 1) * g**w.length)


def main_term(w: GnWindow, query: ApQuery) -> Fraction:
    d = structural_modulus(w, query.q)
    return Fraction(d, query.q) * int(residue_counts(w, d)[query.a % d])


def rho(g: int, query: ApQuery) -> Fraction:
    """Density factor of the reversed-prime asymptotic; zero in the degenerate cases."""
    g = check_base(g)
    a, q = query.a, query.q
    gg = g * g - 1
    if math.gcd(math.gcd(a, q), gg) > 1 or math.gcd(a, q) % g == 0:
        return Fraction(0)
    qg = math.gcd(q, g)
    value = Fraction(1)
    if a % qg == 0:
        value -= Fraction(qg, g)
    for p in _prime_factors(math.gcd(q, gg)):
        value *= Fraction(p, p - 1)
    return value


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def n0(g: int, q: int, N: int) -> int:
    """Smallest ``N0 >= 1`` with gcd(q, g^N0) == gcd(q, g^N)."""
    g = check_base(g)
    q = check_positive(q, "q")
    N = check_positive(N, "N")
    target = math.gcd(q, g**N)
    k = 1
    while math.gcd(q, g**k) != target:
        k += 1
    return k


def predict(w: GnWindow, query: ApQuery) -> float:
    r = rho(w.base, query)
    if r == 0:
        return 0.0
    return float(r) / query.q * w.base**w.length / (w.length * math.log(w.base))


def census(w: GnWindow, query: ApQuery) -> CensusRecord:
    count = reversed_prime_count(w, query)
    mt = main_term(w, query)
    return CensusRecord(
        window=w,
        query=query,
        count=count,
        main_term=mt,
        remainder=count - mt,
        rho=rho(w.base, query),
        prediction=predict(w, query),
        n0=n0(w.base, query.q, w.length),
    )
