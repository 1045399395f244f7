"""Pointwise bounds for the digit sum and its products.

Every bound here has fully explicit constants, so each sample yields an
exact-mode ``BoundCheck`` with a pass/fail verdict.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..checks import BoundCheck
from ..constants import c_g
from ..expsum import Phi, dist, exact, phi, phi_deriv, phi_vec
from ._core import POINTWISE_TOL, SINGLE_ROW_TOL, SampleGrid, dist_float, inv_sin_cap, random_rational

PI2_6 = math.pi**2 / 6

Real = Fraction | float | int


def _partial_sum(g: int, alpha: float, u: float, weighted: bool = False) -> float:
    """``|sum_{u <= n < g} e(n alpha)|`` (times ``n`` if weighted)."""
    m = max(0, math.ceil(u))
    if m >= g:
        return 0.0
    if g > 4096 and not weighted:
        s = math.sin(math.pi * alpha)
        if abs(s) < 1e-12:
            return float(g - m)
        return abs(math.sin(math.pi * (g - m) * alpha) / s)
    n = np.arange(m, g)
    terms = np.exp(2j * np.pi * alpha * n)
    if weighted:
        terms = n * terms
    return float(abs(terms.sum()))


def strong_bound_sample(g: int, alpha: float, u: float) -> BoundCheck:
    return BoundCheck(
        "strong_bound",
        {"g": g, "alpha": alpha, "u": u},
        _partial_sum(g, alpha, u),
        float(inv_sin_cap(g, alpha)),
        tol=POINTWISE_TOL,
    )


def check_strong_bound(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g in grid.g_list:
        out.append(strong_bound_sample(g, 0.0, 0.0))
        rng = grid.rng(g, 1)
        for alpha, u in zip(rng.random(grid.samples), rng.random(grid.samples) * g):
            out.append(strong_bound_sample(g, float(alpha), float(u)))
    return out


def deriv_bound_samples(g: int, alpha: float, u: float) -> list[BoundCheck]:
    cap = float(inv_sin_cap(g, alpha))
    params = {"g": g, "alpha": alpha, "u": u}
    return [
        BoundCheck("deriv_partial", params, _partial_sum(g, alpha, u, weighted=True), g * cap, tol=POINTWISE_TOL * g),
        BoundCheck("deriv_phi", params, abs(phi_deriv(g, alpha)), 2 * math.pi * g * cap, tol=POINTWISE_TOL * g),
    ]


def check_deriv_bound(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g in grid.g_list:
        out.extend(deriv_bound_samples(g, 0.0, 0.0))
        rng = grid.rng(g, 2)
        for alpha, u in zip(rng.random(grid.samples), rng.random(grid.samples) * g):
            out.extend(deriv_bound_samples(g, float(alpha), float(u)))
    return out


def gaussian_decay_rhs(g: int, alpha: float) -> float:
    d = float(dist_float(alpha))
    return g * math.exp(-PI2_6 * (g * g - 1) * d * d)


def check_gaussian_decay(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g in grid.g_list:
        rng = grid.rng(g, 3)
        t = np.concatenate([[0.0, 1.0], rng.random(grid.samples)])
        sign = np.where(rng.random(t.size) < 0.5, -1.0, 1.0)
        shift = rng.integers(-2, 3, t.size)
        alphas = sign * t / g + shift
        vals = np.abs(phi_vec(g, alphas - np.round(alphas)))
        for a, v in zip(alphas, vals):
            out.append(
                BoundCheck("gaussian_decay", {"g": g, "alpha": float(a)}, float(v), gaussian_decay_rhs(g, a), tol=POINTWISE_TOL)
            )
    return out


def check_monotone_majorant(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g in grid.g_list:
        rng = grid.rng(g, 4)
        n = grid.samples
        delta = np.concatenate([[0.0, 2 / (3 * g)], rng.random(n) * 2 / (3 * g)])
        t = delta + rng.random(delta.size) * (0.5 - delta)
        t[1] = 0.5
        alphas = np.where(rng.random(delta.size) < 0.5, -t, t) + rng.integers(-2, 3, delta.size)
        lhs = np.abs(phi_vec(g, alphas - np.round(alphas)))
        rhs = np.abs(phi_vec(g, delta))
        for d, a, l, r in zip(delta, alphas, lhs, rhs):
            out.append(
                BoundCheck("monotone_majorant", {"g": g, "delta": float(d), "alpha": float(a)}, float(l), float(r), tol=POINTWISE_TOL)
            )
    return out


def consecutive_samples(g: int, alpha: Fraction, beta: Fraction, kappa: int, lam: int) -> list[BoundCheck]:
    """The max lower bound and the product bound for one tuple."""
    x1 = alpha * Fraction(g) ** kappa + beta * Fraction(g) ** lam
    x2 = alpha * Fraction(g) ** (kappa + 1) + beta * Fraction(g) ** (lam - 1)
    spread = dist(alpha * (g * g - 1) * Fraction(g) ** kappa)
    params = {"g": g, "alpha": alpha, "beta": beta, "kappa": kappa, "lambda": lam}
    prod = abs(phi(g, x1)) * abs(phi(g, x2))
    rhs = g * g * math.exp(-PI2_6 * (g - 1) / (g + 1) * float(spread) ** 2)
    return [
        BoundCheck("consecutive_max", params, float(spread / (g + 1)), float(max(dist(x1), dist(x2))), tol=POINTWISE_TOL),
        BoundCheck("consecutive_pair", params, prod, rhs, tol=POINTWISE_TOL * g * g),
    ]


def check_consecutive_pair(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g in grid.g_list:
        rng = grid.rng(g, 5)
        out.extend(consecutive_samples(g, Fraction(0), random_rational(rng, 1000), 1, 1))
        for _ in range(grid.samples):
            alpha = random_rational(rng, 10**6)
            beta = alpha if rng.random() < 0.05 else random_rational(rng, 10**6)
            kappa = int(rng.integers(0, 5))
            lam = int(rng.integers(0, 6))
            out.extend(consecutive_samples(g, alpha, beta, kappa, lam))
    return out


def escape_index(g: int, alpha: Real) -> int:
    """``floor(log(g / ((g+1)||alpha||)) / log g)``, computed exactly."""
    d = dist(alpha)
    if d == 0:
        raise ValueError("alpha must not be an integer")
    # largest i with g^(i-1) (g+1) ||alpha|| <= 1
    i = 0
    while Fraction(g) ** i * (g + 1) * d <= 1:
        i += 1
    return i


def geometric_escape_sample(g: int, alpha: Fraction) -> BoundCheck:
    i0 = escape_index(g, alpha)
    return BoundCheck(
        "geometric_escape",
        {"g": g, "alpha": alpha, "i0": i0},
        1.0 / (g + 1),
        float(dist(alpha * Fraction(g) ** i0)),
        tol=POINTWISE_TOL,
    )


def check_geometric_escape(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g in grid.g_list:
        rng = grid.rng(g, 6)
        out.append(geometric_escape_sample(g, Fraction(1, g + 1)))
        for _ in range(grid.samples):
            alpha = random_rational(rng, 10**4)
            if alpha.denominator == 1:
                alpha += Fraction(1, 2)
            out.append(geometric_escape_sample(g, alpha))
    return out


def product_decay_rhs(g: int, N: int, alpha: Real) -> float:
    a = exact(alpha)
    total = sum(float(dist(a * (g * g - 1) * g**i)) ** 2 for i in range(1, N - 2))
    return g ** (N - 2) * math.exp(-(math.pi**2 / 12) * (g - 1) / (g + 1) * total)


def product_decay_sample(g: int, N: int, alpha: Real, beta: Real) -> BoundCheck:
    rhs = product_decay_rhs(g, N, alpha)
    return BoundCheck(
        "phi_product_decay",
        {"g": g, "N": N, "alpha": exact(alpha), "beta": exact(beta)},
        abs(Phi(g, N, alpha, beta)),
        rhs,
        tol=POINTWISE_TOL * rhs,
    )


def check_phi_product_decay(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g, N in grid.cells():
        if N < 4:
            continue
        rng = grid.rng(g, N, 7)
        out.append(product_decay_sample(g, N, 0, float(rng.random())))
        for _ in range(grid.samples):
            alpha = random_rational(rng, 10**4)
            out.append(product_decay_sample(g, N, alpha, float(rng.random())))
    return out


def single_row_sum(g: int, theta: float) -> float:
    h = np.arange(g)
    return float(inv_sin_cap(g, h / g + theta).sum())


def check_single_row_L1(grid: SampleGrid) -> list[BoundCheck]:
    out = []
    for g in grid.g_list:
        rng = grid.rng(g, 8)
        rhs = c_g(g) * g
        thetas = np.concatenate([[0.0, 1 / (2 * g)], rng.random(grid.samples) * 2 - 1])
        for t in thetas:
            out.append(BoundCheck("single_row_L1", {"g": g, "theta": float(t)}, single_row_sum(g, t), rhs, tol=SINGLE_ROW_TOL))
    return out


__all__ = [
    "check_strong_bound",
    "check_deriv_bound",
    "check_gaussian_decay",
    "check_monotone_majorant",
    "check_consecutive_pair",
    "check_geometric_escape",
    "check_phi_product_decay",
    "check_single_row_L1",
    "escape_index",
]
