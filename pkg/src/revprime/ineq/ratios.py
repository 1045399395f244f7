"""Ratio-mode measurements for bounds that only hold up to an unspecified constant.

Nothing here carries a verdict; each record reports ``lhs / rhs``.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..checks import BoundCheck
from ..circle import excluded_k
from ..constants import alpha_g, c_g
from ..digits import GnWindow
from ..expsum import Phi_grid, exact, grid_arguments, phi_vec, scaled_mod1
from ._core import SampleGrid

ETA_GRID = 34  # 32 interior points plus both endpoints


def _units(r: int) -> list[int]:
    return [b for b in range(r) if math.gcd(b, r) == 1]


def _Phi_shifted(g: int, M: int, b: int, r: int, shift, eta: np.ndarray, beta) -> np.ndarray:
    """``|Phi_M(b/r + shift + eta, beta)|`` for a float array of small ``eta``."""
    out = np.ones(eta.shape)
    for i in range(1, M - 1):
        base = float(scaled_mod1(Fraction(b, r) + exact(shift), i, g) + scaled_mod1(beta, M - i - 1, g))
        x = base + eta * float(g**i)
        out *= np.abs(phi_vec(g, x - np.floor(x + 0.5)))
    return out


def large_sieve_lhs(g: int, M: int, R: int, theta=0, beta=0) -> float:
    """Farey sum of ``max_{|eta| <= R^-2/4} |Phi_M|``, the max sampled on a fixed eta grid."""
    w = 0.25 / (R * R)
    eta = np.linspace(-w, w, ETA_GRID)
    total = 0.0
    for r in range(1, R + 1):
        for b in _units(r):
            total += float(_Phi_shifted(g, M, b, r, theta, eta, beta).max())
    return total


def measure_large_sieve(grid: SampleGrid) -> list[BoundCheck]:
    R_list = grid.extra.get("R_list", (2, 4, 8, 16, 32))
    out = []
    for g, M in grid.cells():
        if M < 3:
            continue
        rng = grid.rng(g, M, 13)
        rhs_base = c_g(g) ** M
        for R in R_list:
            for s in range(grid.samples):
                theta, beta = (0.0, 0.0) if s == 0 else (float(rng.random()), float(rng.random()))
                lhs = large_sieve_lhs(g, M, R, theta, beta)
                rhs = (g**M + R * R) * rhs_base
                regime = "R2>g^M" if R * R > g**M else "g^M>=R2"
                out.append(
                    BoundCheck(
                        "large_sieve",
                        {"g": g, "M": M, "R": R, "theta": theta, "beta": beta, "regime": regime},
                        lhs,
                        rhs,
                        mode="ratio",
                        notes=("eta max sampled on a 34-point grid (lower bound on the true max)",),
                    )
                )
    return out


SHIFT_CLASSES = range(-16, 17)  # i/(4R^2) offsets covering |eps| <= 4R^-2


def measure_shift_classes(grid: SampleGrid) -> list[BoundCheck]:
    """Worst shifted Farey sum over the offsets ``i/(4R^2)``, ``|i| <= 16``.

    This is the classification step that feeds the large sieve into the
    hybrid bound; each class is again a large-sieve sum.
    """
    R_list = grid.extra.get("R_list", (2, 4, 8))
    out = []
    for g, M in grid.cells():
        if M < 3:
            continue
        rng = grid.rng(g, M, 16)
        rhs = c_g(g) ** M
        for R in R_list:
            for s in range(grid.samples):
                beta = 0.0 if s == 0 else float(rng.random())
                worst = max(large_sieve_lhs(g, M, R, Fraction(i, 4 * R * R), beta) for i in SHIFT_CLASSES)
                out.append(
                    BoundCheck(
                        "shift_classes",
                        {"g": g, "M": M, "R": R, "beta": beta},
                        worst,
                        (g**M + R * R) * rhs,
                        mode="ratio",
                        notes=(f"{len(SHIFT_CLASSES)} offset classes",),
                    )
                )
    return out


def hybrid_lhs(g: int, N: int, R: int, H: float, beta=0) -> float:
    """``sum_{r<=R} sum*_b sum_{|h - g^N b/r| <= H} |Phi_N(h/g^N, beta)|``."""
    G = g**N
    total = 0.0
    for r in range(1, R + 1):
        for b in _units(r):
            centre = Fraction(G * b, r)
            lo = math.ceil(centre - Fraction(H))
            hi = math.floor(centre + Fraction(H))
            h = np.arange(lo, hi + 1, dtype=np.int64) % G
            total += float(np.abs(Phi_grid(g, N, h, G, 0, beta)).sum())
    return total


def hybrid_check(g: int, N: int, R: int, H: float, beta=0) -> BoundCheck:
    if N < 8 or R < 1:
        raise ValueError("hybrid bound needs N >= 8 and R >= 1")
    if R * R * H > 4 * g**N:
        raise ValueError(f"R^2 H = {R * R * H} exceeds 4 g^N = {4 * g ** N}")
    notes = []
    if H < 4 * g**8:
        if H < 4 * g**3:
            raise ValueError(f"H={H} below the relaxed floor 4g^3 = {4 * g ** 3}")
        notes.append(f"relaxed: H={H} < 4g^8={4 * g ** 8}")
    lhs = hybrid_lhs(g, N, R, H, beta)
    rhs = g**N * (R * R * H) ** alpha_g(g)
    return BoundCheck(
        "hybrid",
        {"g": g, "N": N, "R": R, "H": H, "beta": exact(beta)},
        lhs,
        rhs,
        mode="ratio",
        notes=tuple(notes),
    )


def measure_hybrid(grid: SampleGrid) -> list[BoundCheck]:
    R_list = grid.extra.get("R_list", (1, 2, 4))
    out = []
    for g, N in grid.cells():
        if N < 8:
            continue
        rng = grid.rng(g, N, 14)
        H_list = grid.extra.get("H_list") or sorted({4 * g**3, 8 * g**3, 4 * g**8})
        for R in R_list:
            for H in H_list:
                if R * R * H > 4 * g**N or H < 4 * g**3:
                    continue
                for s in range(grid.samples):
                    beta = 0.0 if s == 0 else float(rng.random())
                    out.append(hybrid_check(g, N, R, H, beta))
    return out


def linf_average(g: int, N: int, q: int, alpha, ell: int = 0) -> float:
    """``(1/q) sum_k |Phi_N(alpha, k/q + ell/(g^3-g))|`` over the non-structured ``k``."""
    w = GnWindow(g, N)
    ks = [k for k in range(q) if not excluded_k(w, q, k)]
    if not ks:
        return 0.0
    total = 0.0
    for k in ks:
        beta = Fraction(k, q) + Fraction(ell, g**3 - g)
        # swap symmetry: Phi_N(alpha, beta) = Phi_N(beta, alpha)
        val = 1.0
        for i in range(1, N - 1):
            x = grid_arguments(g, N, i, np.zeros(1, dtype=np.int64), 1, beta, alpha)
            val *= float(np.abs(phi_vec(g, x))[0])
        total += val
    return total / q


def measure_linf_decay(grid: SampleGrid) -> list[BoundCheck]:
    """Empirical decay of the averaged pointwise bound; reports ``-log(ratio) log q / N``."""
    q_list = grid.extra.get("q_list", (7, 13, 49))
    out = []
    for g, N in grid.cells():
        if N < 4:
            continue
        rng = grid.rng(g, N, 15)
        for q in q_list:
            for s in range(grid.samples):
                alpha = 0.0 if s == 0 else float(rng.random())
                ell = 0 if s == 0 else int(rng.integers(0, g**3 - g))
                lhs = linf_average(g, N, q, alpha, ell)
                rhs = float(g**N)
                rate = -math.log(lhs / rhs) * math.log(q) / N if lhs > 0 else math.inf
                out.append(
                    BoundCheck(
                        "linf_decay",
                        {"g": g, "N": N, "q": q, "alpha": alpha, "ell": ell},
                        lhs,
                        rhs,
                        mode="ratio",
                        notes=(f"empirical rate {rate:.6g}",),
                    )
                )
    return out
