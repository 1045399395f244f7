"""Discrete circle method for reversed primes.

The remainder of the reversed-prime count is written as a sum over the
frequency grid ``h / g^N`` of ``S_N(h/g^N) F_N(-h/g^N, k/q)``.  Each grid
point is attached to a Farey fraction ``b/r`` with ``r <= Q`` and split into
major (``max(r, g^N |eta|) <= P``) and minor arcs.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from ._config import check_cap, check_positive
from .census import ApQuery, main_term, residue_counts
from .checks import BoundCheck
from .constants import alpha_g
from .digits import GnWindow
from .expsum import F_grid, S, S_spectrum

CHUNK = 1 << 15


@dataclass(frozen=True)
class FareyPoint:
    b: int
    r: int
    eta: Fraction
    h: int
    arc: str


def farey(Q: int) -> list[tuple[int, int]]:
    """Reduced fractions ``b/r`` in ``[0, 1]`` with ``r <= Q``, ascending."""
    Q = check_positive(math.floor(Q), "Q")
    a, b, c, d = 0, 1, 1, Q
    out = [(a, b)]
    while c <= Q:
        k = (Q + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        out.append((a, b))
    return out


def excluded_k(w: GnWindow, q: int, k: int) -> bool:
    """True when ``q | (g^2 - 1) g^N k`` (the structured frequencies)."""
    g = w.base
    return ((g * g - 1) * g**w.length * k) % q == 0


def remainder_frequencies(w: GnWindow, q: int) -> list[int]:
    return [k for k in range(q) if not excluded_k(w, q, k)]


@dataclass
class ArcPartition:
    window: GnWindow
    P: float
    Q: float
    b: np.ndarray
    r: np.ndarray
    offset: np.ndarray  # h*r - b*g^N, so eta = offset / (r g^N)
    major: np.ndarray
    ambiguous: int = 0
    notes: tuple[str, ...] = field(default=())

    @property
    def size(self) -> int:
        return self.window.hi

    @property
    def n_major(self) -> int:
        return int(self.major.sum())

    @property
    def n_minor(self) -> int:
        return self.size - self.n_major

    def point(self, h: int) -> FareyPoint:
        G = self.size
        r = int(self.r[h])
        return FareyPoint(
            b=int(self.b[h]),
            r=r,
            eta=Fraction(int(self.offset[h]), r * G),
            h=h,
            arc="major" if self.major[h] else "minor",
        )

    def points(self) -> Iterator[FareyPoint]:
        for h in range(self.size):
            yield self.point(h)

    def summary(self) -> dict:
        return {
            "g": self.window.base,
            "N": self.window.length,
            "P": self.P,
            "Q": self.Q,
            "points": self.size,
            "major": self.n_major,
            "minor": self.n_minor,
            "max_r": int(self.r.max()),
            "ambiguous": self.ambiguous,
            "notes": list(self.notes),
        }


def desk_arc_parameters(w: GnWindow) -> tuple[float, float]:
    """Desk-scale stand-in for the arc parameters: ``P = N^2``, ``Q = g^floor(N/2)``."""
    return float(w.length**2), float(w.base ** (w.length // 2))


def dissect(w: GnWindow, P: float, Q: float, strict: bool = False) -> ArcPartition:
    """Attach every ``h`` in ``[0, g^N)`` to a Farey fraction of order ``Q``.

    The arcs ``|eta| < 1/(rQ)`` of neighbouring fractions can overlap, so the
    fraction with the smallest denominator is taken (ties by smaller
    ``|eta|``); the number of grid points with more than one candidate is
    kept in ``ambiguous``.
    """
    G = w.hi
    check_cap(G, "dissection grid g^N")
    if not 1 <= P <= Q:
        raise ValueError(f"need 1 <= P <= Q, got P={P}, Q={Q}")
    notes = []
    if P < 4 * w.base**8:
        if strict:
            raise ValueError(f"P={P} below 4 g^8 = {4 * w.base ** 8}")
        notes.append(f"relaxed: P={P} < 4g^8")
    Qf = Fraction(Q)
    # |h r - b G| < G / Q  <=>  |h r - b G| <= ceil(G/Q) - 1 on integers
    width = math.ceil(Fraction(G) / Qf) - 1
    Pf = Fraction(P)

    h = np.arange(G, dtype=np.int64)
    best_r = np.zeros(G, dtype=np.int64)
    best_b = np.zeros(G, dtype=np.int64)
    best_off = np.zeros(G, dtype=np.int64)
    n_cand = np.zeros(G, dtype=np.int8)
    for r in range(1, math.floor(Qf) + 1):
        hr = h * r
        base_b = (2 * hr + G) // (2 * G)
        for db in (-1, 0, 1) if r == 1 else (0,):
            b = base_b + db
            off = hr - b * G
            ok = (np.abs(off) <= width) & (b >= 0) & (b <= r)
            if r > 1:
                ok &= np.gcd(b, r) == 1
            if not ok.any():
                continue
            n_cand[ok] = np.minimum(n_cand[ok] + 1, 2)
            take = ok & ((best_r == 0) | ((best_r == r) & (np.abs(off) < np.abs(best_off))))
            best_r[take] = r
            best_b[take] = b[take]
            best_off[take] = off[take]
    missing = np.flatnonzero(best_r == 0)
    if missing.size:
        raise RuntimeError(f"dissection not total: {missing.size} grid points unassigned, first h={missing[0]}")
    # max(r, G|eta|) <= P with G|eta| = |off|/r
    r_ok = best_r <= math.floor(Pf)
    major = r_ok & (np.abs(best_off) * Pf.denominator <= Pf.numerator * best_r)
    return ArcPartition(
        window=w,
        P=float(P),
        Q=float(Q),
        b=best_b,
        r=best_r,
        offset=best_off,
        major=major,
        ambiguous=int((n_cand > 1).sum()),
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralPass:
    ks: tuple[int, ...]
    totals: np.ndarray  # sum_h S F for each k
    major_abs: float
    minor_abs: float


def _chunk_pass(spec: np.ndarray, w: GnWindow, q: int, ks: Sequence[int], lo: int, hi: int, major: np.ndarray | None):
    g, N, G = w.base, w.length, w.hi
    h = np.arange(lo, hi, dtype=np.int64)
    s = spec[lo:hi]
    s_abs = np.abs(s)
    totals = np.zeros(len(ks), dtype=np.complex128)
    maj = mnr = 0.0
    for j, k in enumerate(ks):
        f = F_grid(g, N, h, G, beta=Fraction(k, q), sign=-1)
        totals[j] = np.dot(s, f)
        if major is not None:
            a = s_abs * np.abs(f)
            m = major[lo:hi]
            maj += float(a[m].sum())
            mnr += float(a[~m].sum())
    return totals, maj, mnr


def spectral_pass(w: GnWindow, q: int, threads: int = 1, partition: ArcPartition | None = None) -> SpectralPass:
    """One sweep over the frequency grid for every non-structured ``k``.

    The grid is cut into fixed-size chunks whose partial sums are merged in
    chunk order, so the result does not depend on ``threads``.
    """
    q = check_positive(q, "q")
    G = w.hi
    check_cap(G, "frequency grid g^N")
    ks = tuple(remainder_frequencies(w, q))
    if not ks:
        return SpectralPass(ks, np.zeros(0, dtype=np.complex128), 0.0, 0.0)
    spec = S_spectrum(w.base, w.length)
    major = partition.major if partition is not None else None
    bounds = [(lo, min(lo + CHUNK, G)) for lo in range(0, G, CHUNK)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _chunk_pass(spec, w, q, ks, b[0], b[1], major), bounds))
    else:
        parts = [_chunk_pass(spec, w, q, ks, lo, hi, major) for lo, hi in bounds]
    totals = np.zeros(len(ks), dtype=np.complex128)
    maj = mnr = 0.0
    for t, a, m in parts:
        totals += t
        maj += a
        mnr += m
    return SpectralPass(ks, totals, maj, mnr)


def remainders_from_pass(w: GnWindow, q: int, sp: SpectralPass) -> np.ndarray:
    """Complex remainder for every residue ``a`` mod ``q``."""
    if not sp.ks:
        return np.zeros(q, dtype=np.complex128)
    a = np.arange(q)
    k = np.array(sp.ks)
    phases = np.exp(-2j * np.pi * np.outer(a, k) / q)
    return phases @ sp.totals / (q * w.hi)


def remainder_spectral_all(w: GnWindow, q: int, threads: int = 1) -> np.ndarray:
    return remainders_from_pass(w, q, spectral_pass(w, q, threads))


def remainder_spectral(w: GnWindow, query: ApQuery, threads: int = 1, imag_tol: float = 1e-6) -> float:
    z = remainder_spectral_all(w, query.q, threads)[query.a]
    if abs(z.imag) >= imag_tol:
        raise ArithmeticError(f"spectral remainder has imaginary part {z.imag:.3e}")
    return float(z.real)


def remainder_exact_all(w: GnWindow, q: int) -> list[Fraction]:
    """``count - main term`` for every residue, from the census."""
    counts = residue_counts(w, q)
    return [int(counts[a]) - main_term(w, ApQuery(a, q)) for a in range(q)]


@dataclass(frozen=True)
class ArcReport:
    q: int
    R_major: float
    R_minor: float
    max_abs_remainder: float
    n_major: int
    n_minor: int
    major_count_ratio: float  # #major / P^3
    minor_envelope_ratio: float
    triangle_ok: bool

    def as_row(self) -> dict:
        return dict(self.__dict__)


def minor_envelope(w: GnWindow, P: float, Q: float) -> float:
    g, N = w.base, w.length
    a = alpha_g(g)
    return g**N * (P ** (2 * a - 0.5) + g ** ((a - 0.2) * N) + g ** (a * N) * Q**-0.5) * N**6


def arc_split_report(partition: ArcPartition, query: ApQuery, threads: int = 1, tol: float = 1e-6) -> ArcReport:
    w, q = partition.window, query.q
    sp = spectral_pass(w, q, threads, partition)
    scale = 1.0 / (q * w.hi)
    rm, rn = sp.major_abs * scale, sp.minor_abs * scale
    rem = np.abs(remainders_from_pass(w, q, sp))
    worst = float(rem.max()) if rem.size else 0.0
    return ArcReport(
        q=q,
        R_major=rm,
        R_minor=rn,
        max_abs_remainder=worst,
        n_major=partition.n_major,
        n_minor=partition.n_minor,
        major_count_ratio=partition.n_major / partition.P**3,
        minor_envelope_ratio=rn / minor_envelope(w, partition.P, partition.Q),
        triangle_ok=worst <= rm + rn + tol,
    )


# ---------------------------------------------------------------------------


def _envelope_pure(w: GnWindow, r: int) -> float:
    g, N = w.base, w.length
    return (g**N * r**-0.5 + g ** (0.8 * N) + g ** (0.5 * N) * r**0.5) * N**4


def _envelope_eta(w: GnWindow, r: int, eta: Fraction) -> float:
    g, N = w.base, w.length
    x = r * abs(float(eta))
    return (g ** (0.5 * N) * x**-0.5 + g ** (0.8 * N) + g**N * x**0.5) * N**4


def sn_ratio_report(
    w: GnWindow,
    samples: Sequence[tuple[int, int, Fraction]] | None = None,
    rng: np.random.Generator | None = None,
    r_max: int = 50,
    etas_per_r: int = 3,
) -> list[BoundCheck]:
    """Ratios of ``|S_N(b/r + eta)|`` to the two minor-arc envelopes.

    Without explicit samples, one reduced ``b`` per ``r`` in ``[1, r_max]`` is
    drawn and ``eta`` sweeps ``0`` and ``etas_per_r`` values in ``(0, r^-2]``.
    """
    if samples is None:
        rng = rng if rng is not None else np.random.default_rng(0)
        samples = []
        for r in range(1, r_max + 1):
            units = [b for b in range(r) if math.gcd(b, r) == 1]
            b = int(units[int(rng.integers(len(units)))])
            samples.append((b, r, Fraction(0)))
            for j in range(1, etas_per_r + 1):
                samples.append((b, r, Fraction(j, etas_per_r * r * r)))
    out = []
    for b, r, eta in samples:
        val = abs(S(w.base, w.length, Fraction(b, r) + eta))
        params = {"g": w.base, "N": w.length, "b": b, "r": r, "eta": str(eta)}
        out.append(BoundCheck("S_pure", params, val, _envelope_pure(w, r), mode="ratio"))
        if eta != 0:
            out.append(BoundCheck("S_eta", params, val, _envelope_eta(w, r, eta), mode="ratio"))
    return out
