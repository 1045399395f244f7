"""Digit exponential sums.

``phi`` is the complete digit sum, ``Phi`` its product over the middle digit
positions, ``F`` the bilinear sum over the window with the reversal as second
variable and ``S`` the prime exponential sum.  Only fractional parts of the
frequencies matter, so every argument is reduced mod 1 before it reaches a
trigonometric function.  Floats are converted to their exact dyadic value so
that multiplying by large powers of ``g`` loses nothing.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Union

import numpy as np

from ._config import check_base, check_cap
from .census import prime_indicator, sieve_primes
from .checks import BoundCheck
from .digits import GnWindow, gn_members, reverse_array

Real = Union[int, float, Fraction]

TWO_PI = 2.0 * math.pi
NEAR_INTEGER = 1e-6
_SPLIT = float(2**26)


def exact(x: Real) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    xf = float(x)
    if not math.isfinite(xf):
        raise ValueError(f"frequency must be finite, got {x!r}")
    return Fraction(xf)


def mod1(x: Real) -> Fraction:
    """Representative of ``x`` mod 1 in ``[-1/2, 1/2)``."""
    x = exact(x)
    r = x - math.floor(x)
    return r - 1 if r >= Fraction(1, 2) else r


def scaled_mod1(x: Real, k: int, g: int) -> Fraction:
    """``x * g**k`` mod 1, exact; ``k`` may be negative."""
    x = exact(x)
    num, den = x.numerator, x.denominator
    if k >= 0:
        r = Fraction(num * pow(g, k, den) % den, den)
    else:
        r = Fraction(num, den * g ** (-k)) % 1
    return r - 1 if r >= Fraction(1, 2) else r


def dist(x: Real) -> Fraction:
    """Distance to the nearest integer, exact."""
    return abs(mod1(x))


def e(x: Real) -> complex:
    return cmath.exp(1j * TWO_PI * float(mod1(x)))


# ---------------------------------------------------------------------------
# phi and its derivative


def phi(g: int, alpha: Real) -> complex:
    """Direct summation of ``sum_{0<=n<g} e(alpha n)``."""
    g = check_base(g)
    x = float(mod1(alpha))
    n = np.arange(g)
    return complex(np.exp(1j * TWO_PI * x * n).sum())


def phi_closed(g: int, alpha: Real) -> complex:
    """Sine-ratio form ``e((g-1)alpha/2) sin(pi g alpha) / sin(pi alpha)``.

    Raises ``ZeroDivisionError`` at integers; falls back to direct summation
    within ``NEAR_INTEGER`` of an integer.
    """
    g = check_base(g)
    r = mod1(alpha)
    if r == 0:
        raise ZeroDivisionError("removable singularity at an integer; use phi()")
    x = float(r)
    if abs(x) < NEAR_INTEGER:
        return phi(g, r)
    return cmath.exp(1j * math.pi * (g - 1) * x) * math.sin(math.pi * g * x) / math.sin(math.pi * x)


def phi_deriv(g: int, alpha: Real) -> complex:
    """``d phi / d alpha = 2 pi i sum n e(alpha n)`` by direct summation."""
    g = check_base(g)
    x = float(mod1(alpha))
    n = np.arange(g)
    return complex(1j * TWO_PI * (n * np.exp(1j * TWO_PI * x * n)).sum())


def phi_vec(g: int, x: np.ndarray) -> np.ndarray:
    """phi on an array of arguments already reduced to ``[-1/2, 1/2)``."""
    x = np.asarray(x, dtype=np.float64)
    small = np.abs(x) < NEAR_INTEGER
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (
            np.exp(1j * math.pi * (g - 1) * x)
            * np.sin(math.pi * g * x)
            / np.sin(math.pi * x)
        )
    if small.any():
        xs = x[small]
        acc = np.zeros(xs.shape, dtype=np.complex128)
        for n in range(g):
            acc += np.exp(1j * TWO_PI * n * xs)
        out[small] = acc
    return out


def phi_deriv_vec(g: int, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if g <= 64:
        acc = np.zeros(x.shape, dtype=np.complex128)
        for n in range(1, g):
            acc += n * np.exp(1j * TWO_PI * n * x)
        return 1j * TWO_PI * acc
    small = np.abs(x) < NEAR_INTEGER
    z = np.exp(1j * TWO_PI * x)
    zg = np.exp(1j * TWO_PI * g * x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 1j * TWO_PI * (g * zg * (z - 1) - (zg - 1) * z) / (z - 1) ** 2
    if small.any():
        xs = x[small]
        acc = np.zeros(xs.shape, dtype=np.complex128)
        for n in range(1, g):
            acc += n * np.exp(1j * TWO_PI * n * xs)
        out[small] = 1j * TWO_PI * acc
    return out


# ---------------------------------------------------------------------------
# scalar Phi, F, S


def digit_argument(g: int, N: int, i: int, alpha: Real, beta: Real) -> Fraction:
    """``alpha g^i + beta g^(N-i-1)`` mod 1."""
    return mod1(scaled_mod1(alpha, i, g) + scaled_mod1(beta, N - i - 1, g))


def Phi(g: int, N: int, alpha: Real, beta: Real) -> complex:
    g = check_base(g)
    if N < 3:
        raise ValueError(f"Phi needs N >= 3, got {N}")
    alpha, beta = exact(alpha), exact(beta)
    x = np.array([float(digit_argument(g, N, i, alpha, beta)) for i in range(1, N - 1)])
    return complex(np.prod(phi_vec(g, x)))


def Phi_dalpha(g: int, N: int, alpha: Real, beta: Real) -> complex:
    """Partial derivative of ``Phi`` in its first argument."""
    g = check_base(g)
    alpha, beta = exact(alpha), exact(beta)
    x = np.array([float(digit_argument(g, N, i, alpha, beta)) for i in range(1, N - 1)])
    return complex(_dproduct(g, x[:, None], np.array([float(g**i) for i in range(1, N - 1)]))[0])


def _dproduct(g: int, xs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """``sum_i w_i phi'(x_i) prod_{j != i} phi(x_j)`` column-wise, ``xs`` of shape (k, m)."""
    vals = phi_vec(g, xs)
    ders = phi_deriv_vec(g, xs)
    k = xs.shape[0]
    prefix = np.ones((k + 1, xs.shape[1]), dtype=np.complex128)
    for i in range(k):
        prefix[i + 1] = prefix[i] * vals[i]
    suffix = np.ones((k + 1, xs.shape[1]), dtype=np.complex128)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] * vals[i]
    out = np.zeros(xs.shape[1], dtype=np.complex128)
    for i in range(k):
        out += weights[i] * ders[i] * prefix[i] * suffix[i + 1]
    return out


def _edge(g: int, x: Fraction) -> complex:
    return phi(g, x) - 1.0


def F_factored(g: int, N: int, alpha: Real, beta: Real) -> complex:
    """Exact factorisation: two edge-digit sums times ``Phi``."""
    g = check_base(g)
    if N < 3:
        raise ValueError(f"factored path needs N >= 3, got {N}")
    alpha, beta = exact(alpha), exact(beta)
    low = _edge(g, digit_argument(g, N, 0, alpha, beta))
    high = _edge(g, digit_argument(g, N, N - 1, alpha, beta))
    return low * high * Phi(g, N, alpha, beta)


def _phase(alpha: Real, n: np.ndarray) -> np.ndarray:
    """``alpha * n`` mod 1 for an int64 array ``n`` of magnitude below 2**27."""
    a = exact(alpha)
    a = a - math.floor(a)
    num, den = a.numerator, a.denominator
    if den < 2**31 and int(np.max(n, initial=0)) < 2**31:
        return ((n % den) * num % den) / den
    af = float(a)
    hi = math.floor(af * _SPLIT) / _SPLIT
    lo = float(a - Fraction(hi))
    t = np.mod(hi * n.astype(np.float64), 1.0)
    return np.mod(t + lo * n, 1.0)


def F(g: int, N: int, alpha: Real, beta: Real) -> complex:
    """Direct sum of ``e(alpha n + beta rev(n))`` over the window."""
    g = check_base(g)
    w = GnWindow(g, N)
    n = gn_members(w)
    rev = reverse_array(n, g, N)
    ph = np.mod(_phase(alpha, n) + _phase(beta, rev), 1.0)
    return complex(np.exp(1j * TWO_PI * ph).sum())


def S(g: int, N: int, alpha: Real) -> complex:
    """Prime exponential sum over ``1 <= p < g^N``."""
    g = check_base(g)
    check_cap(g**N, "prime range g^N")
    p = sieve_primes(0, g**N)
    return complex(np.exp(1j * TWO_PI * _phase(alpha, p)).sum())


def S_spectrum(g: int, N: int) -> np.ndarray:
    """``S_N(h / g^N)`` for every ``0 <= h < g^N``, via one FFT."""
    G = check_base(g) ** N
    check_cap(G, "spectrum length g^N")
    return np.conj(np.fft.fft(prime_indicator(G)))


# ---------------------------------------------------------------------------
# grid evaluation used by the circle method and the L1 checkers


def grid_arguments(
    g: int, N: int, i: int, h: np.ndarray, D: int, alpha0: Real = 0, beta: Real = 0, sign: int = 1
) -> np.ndarray:
    """Reduced digit-``i`` arguments for ``alpha = sign*h/D + alpha0``.

    ``h`` is an int64 array with ``0 <= h < D`` and ``D**2 < 2**63``.
    """
    m = pow(g, i, D) if i >= 0 else None
    if m is None:
        raise ValueError("grid_arguments needs i >= 0")
    part = (h * m % D).astype(np.float64) / D
    shift = float(mod1(scaled_mod1(alpha0, i, g) + scaled_mod1(beta, N - i - 1, g)))
    x = sign * part + shift
    return x - np.floor(x + 0.5)


def Phi_grid(g: int, N: int, h: np.ndarray, D: int, alpha0: Real = 0, beta: Real = 0, sign: int = 1) -> np.ndarray:
    out = np.ones(h.shape, dtype=np.complex128)
    for i in range(1, N - 1):
        out *= phi_vec(g, grid_arguments(g, N, i, h, D, alpha0, beta, sign))
    return out


def Phi_dalpha_grid(
    g: int, N: int, h: np.ndarray, D: int, alpha0: Real = 0, beta: Real = 0
) -> np.ndarray:
    xs = np.stack([grid_arguments(g, N, i, h, D, alpha0, beta) for i in range(1, N - 1)])
    weights = np.array([float(g**i) for i in range(1, N - 1)])
    return _dproduct(g, xs, weights)


def F_grid(g: int, N: int, h: np.ndarray, D: int, beta: Real = 0, sign: int = 1) -> np.ndarray:
    """Factored ``F_N(sign*h/D, beta)`` on an integer grid."""
    out = np.ones(h.shape, dtype=np.complex128)
    for i in range(N):
        v = phi_vec(g, grid_arguments(g, N, i, h, D, 0, beta, sign))
        if i == 0 or i == N - 1:
            v = v - 1.0
        out *= v
    return out


# ---------------------------------------------------------------------------


def break_half_check(g: int, N: int, M: int, alpha: Real, beta: Real, rtol: float = 1e-9) -> BoundCheck:
    """Compare ``Phi_N`` with its split at position ``M``."""
    if not 3 <= M <= N - 1:
        raise ValueError(f"need 3 <= M <= N-1, got M={M}, N={N}")
    alpha, beta = exact(alpha), exact(beta)
    whole = Phi(g, N, alpha, beta)
    split = Phi(g, M, alpha, beta * g ** (N - M)) * Phi(g, N - M + 2, alpha * g ** (M - 2), beta)
    scale = max(abs(whole), abs(split), 1.0)
    return BoundCheck(
        lemma_id="break_half",
        params={"g": g, "N": N, "M": M, "alpha": alpha, "beta": beta},
        lhs=abs(whole - split) / scale,
        rhs=rtol,
    )
