"""L1 moments of ``Phi`` over ``g^M``-grids, the unit interval and spaced point sets."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..checks import BoundCheck
from ..circle import farey
from ..constants import c_g
from ..expsum import Phi_dalpha_grid, Phi_grid, exact
from ._core import DISCRETE_RTOL, QUAD_POINTS_PER_CELL, QUADRATURE_RTOL, SampleGrid, inv_sin_cap

TWO_PI = 2 * math.pi


def prelim_sum(g: int, M: int, thetas: list[float]) -> float:
    """``sum_h prod_i min(g, 1/|sin pi(h g^-(i+1) + theta_i)|)`` over ``0 <= h < g^M``."""
    G = g**M
    h = np.arange(G, dtype=np.int64)
    acc = np.ones(G)
    for i in range(1, M - 1):
        d = g ** (i + 1)
        acc *= inv_sin_cap(g, (h % d) / d + thetas[i - 1])
    return float(acc.sum())


def check_prelim_L1(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g, M in grid.cells():
        if M < 3:
            continue
        rng = grid.rng(g, M, 9)
        rhs = (c_g(g) * g) ** M
        for s in range(grid.samples):
            thetas = [0.0] * (M - 2) if s == 0 else list(rng.random(M - 2))
            out.append(
                BoundCheck("prelim_L1", {"g": g, "M": M, "sample": s}, prelim_sum(g, M, thetas), rhs, tol=DISCRETE_RTOL * rhs)
            )
    return out


def discrete_sums(g: int, M: int, theta, beta) -> tuple[float, float]:
    """``sum_h |Phi_M(h/g^M + theta, beta)|`` and the same for the alpha-derivative."""
    G = g**M
    h = np.arange(G, dtype=np.int64)
    return (
        float(np.abs(Phi_grid(g, M, h, G, theta, beta)).sum()),
        float(np.abs(Phi_dalpha_grid(g, M, h, G, theta, beta)).sum()),
    )


def check_L1_discrete(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g, M in grid.cells():
        if M < 3:
            continue
        rng = grid.rng(g, M, 10)
        bound = (c_g(g) * g) ** M
        dbound = TWO_PI * g**M * bound
        for s in range(grid.samples):
            theta, beta = (0.0, 0.0) if s == 0 else (float(rng.random()), float(rng.random()))
            val, dval = discrete_sums(g, M, theta, beta)
            params = {"g": g, "M": M, "theta": theta, "beta": beta}
            out.append(BoundCheck("L1_discrete", params, val, bound, tol=DISCRETE_RTOL * bound))
            out.append(BoundCheck("L1_discrete_deriv", params, dval, dbound, tol=DISCRETE_RTOL * dbound))
    return out


def quadrature_means(g: int, M: int, beta, points_per_cell: int = QUAD_POINTS_PER_CELL) -> tuple[float, float]:
    """Midpoint-rule integrals over ``[0, 1]`` of ``|Phi_M(., beta)|`` and ``|d Phi_M / d alpha|``."""
    K = points_per_cell * g**M
    h = 2 * np.arange(K, dtype=np.int64) + 1
    return (
        float(np.abs(Phi_grid(g, M, h, 2 * K, 0, beta)).mean()),
        float(np.abs(Phi_dalpha_grid(g, M, h, 2 * K, 0, beta)).mean()),
    )


def check_L1_continuous(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g, M in grid.cells():
        if M < 3:
            continue
        rng = grid.rng(g, M, 11)
        bound = c_g(g) ** M
        dbound = TWO_PI * g**M * bound
        for s in range(grid.samples):
            beta = 0.0 if s == 0 else float(rng.random())
            val, dval = quadrature_means(g, M, beta)
            params = {"g": g, "M": M, "beta": beta}
            out.append(BoundCheck("L1_continuous", params, val, bound, tol=QUADRATURE_RTOL * bound))
            out.append(BoundCheck("L1_continuous_deriv", params, dval, dbound, tol=QUADRATURE_RTOL * dbound))
    return out


def spacing_mod1(points: np.ndarray) -> float:
    p = np.sort(np.mod(points, 1.0))
    if p.size < 2:
        return 1.0
    gaps = np.diff(np.concatenate([p, [p[0] + 1.0]]))
    return float(gaps.min())


def _phi_at(g: int, M: int, points: list[Fraction], beta) -> np.ndarray:
    """``|Phi_M(x, beta)|`` at exact rational points via a common denominator."""
    D = math.lcm(*(x.denominator for x in points))
    if D * D >= 2**62:
        # Fall back to a per-point scalar evaluation for unwieldy denominators.
        from ..expsum import Phi

        return np.array([abs(Phi(g, M, x, beta)) for x in points])
    h = np.array([(x.numerator * (D // x.denominator)) % D for x in points], dtype=np.int64)
    return np.abs(Phi_grid(g, M, h, D, 0, beta))


def gallagher_sobolev_check(g: int, M: int, points: list[Fraction], delta: float, beta, label: str) -> BoundCheck:
    actual = spacing_mod1(np.array([float(x) for x in points]))
    if actual < delta * (1 - 1e-12):
        raise ValueError(f"point set is only {actual}-spaced, not {delta}-spaced")
    lhs = float(_phi_at(g, M, points, beta).sum())
    mean_abs, mean_dabs = quadrature_means(g, M, beta)
    rhs = mean_abs / delta + 0.5 * mean_dabs
    return BoundCheck(
        "gallagher_sobolev",
        {"g": g, "M": M, "set": label, "R": len(points), "delta": delta, "beta": exact(beta)},
        lhs,
        rhs,
        tol=QUADRATURE_RTOL * rhs,
    )


def farey_points(Q: int, shift: Fraction = Fraction(0)) -> list[Fraction]:
    return [Fraction(b, r) + shift for b, r in farey(Q) if b < r]


def random_spaced(rng: np.random.Generator, R: int, delta: Fraction, den: int = 10**6) -> list[Fraction]:
    """``R`` rationals that are ``delta``-spaced mod 1 (requires ``R * delta <= 1``)."""
    slack = 1 - R * delta
    if slack < 0:
        raise ValueError("R * delta must not exceed 1")
    cuts = np.sort(rng.random(R))
    extra = [Fraction(int(c * den), den) * slack for c in cuts]
    start = Fraction(int(rng.integers(0, den)), den)
    return [start + i * delta + extra[i] for i in range(R)]


def check_gallagher_sobolev(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g, M in grid.cells():
        if M < 3:
            continue
        rng = grid.rng(g, M, 12)
        for s in range(grid.samples):
            beta = 0.0 if s == 0 else float(rng.random())
            if s % 3 == 0:
                Q = int(rng.integers(2, 8))
                shift = Fraction(int(rng.integers(0, 10**6)), 10**6) if s else Fraction(0)
                pts = farey_points(Q, shift)
                delta = spacing_mod1(np.array([float(x) for x in pts]))
                out.append(gallagher_sobolev_check(g, M, pts, delta, beta, f"farey{Q}"))
            elif s % 3 == 1:
                R = int(rng.integers(1, 40))
                delta = Fraction(1, int(rng.integers(R, 4 * R + 1)))
                pts = random_spaced(rng, R, delta)
                out.append(gallagher_sobolev_check(g, M, pts, float(delta), beta, "random"))
            else:
                x = Fraction(int(rng.integers(0, 10**6)), 10**6)
                out.append(gallagher_sobolev_check(g, M, [x], 1.0, beta, "single"))
    return out
