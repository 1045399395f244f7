"""The per-digit L1 growth constant ``C_g`` and its exponent ``alpha_g``.

``alpha_g < 1/5`` first happens at ``g = 31699``, where the margin is about
2.6e-7, so everything here is evaluated with mpmath at ``EVAL_BITS`` bits.
At 128 bits the evaluation error is below 1e-30, far inside that margin.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from ._config import check_base
from .checks import BoundCheck

EVAL_BITS = 128

_ctx = mpmath.MPContext()
_ctx.prec = EVAL_BITS


@dataclass(frozen=True)
class ConstantsRecord:
    g: int
    c_g: float
    alpha_g: float
    eval_bits: int = EVAL_BITS

    def as_row(self) -> dict:
        return {
            "g": self.g,
            "c_g": repr(self.c_g),
            "alpha_g": repr(self.alpha_g),
            "alpha_g_digits": mpmath.nstr(alpha_g_mp(self.g), 20),
            "eval_bits": self.eval_bits,
        }


def c_g_mp(g: int):
    g = check_base(g)
    x = _ctx.pi / (2 * g)
    return 2 / _ctx.pi * _ctx.log(_ctx.cot(x)) + 1 / (g * _ctx.sin(x)) + 1


def c_g_mp_cos_sin(g: int):
    """Same constant with the cotangent written as cos/sin."""
    g = check_base(g)
    x = _ctx.pi / (2 * g)
    s = _ctx.sin(x)
    return 2 / _ctx.pi * (_ctx.log(_ctx.cos(x)) - _ctx.log(s)) + 1 / (g * s) + 1


def alpha_g_mp(g: int):
    return _ctx.log(c_g_mp(g)) / _ctx.log(g)


def c_g(g: int) -> float:
    return float(c_g_mp(g))


def alpha_g(g: int) -> float:
    return float(alpha_g_mp(g))


def record(g: int) -> ConstantsRecord:
    return ConstantsRecord(g=g, c_g=c_g(g), alpha_g=alpha_g(g))


def threshold_scan(lo: int, hi: int, bound: float = 0.2) -> int | None:
    """Smallest ``g`` in ``[lo, hi]`` with ``alpha_g < bound``, or ``None``.

    Linear below 9; above that ``alpha_g`` is decreasing, so bisection.
    """
    lo = max(check_base(lo), 2)
    if hi < lo:
        return None
    b = _ctx.mpf(bound)
    g = lo
    while g < min(hi + 1, 9):
        if alpha_g_mp(g) < b:
            return g
        g += 1
    if g > hi:
        return None
    if not alpha_g_mp(hi) < b:
        return None
    left, right = g, hi
    while left < right:
        mid = (left + right) // 2
        if alpha_g_mp(mid) < b:
            right = mid
        else:
            left = mid + 1
    return left


def monotonicity_check(lo: int, hi: int) -> BoundCheck:
    """Check ``alpha_(g+1) < alpha_g`` for every ``g`` in ``[lo, hi)``.

    ``lhs`` is the largest observed ``alpha_(g+1) - alpha_g`` (negative on
    success) and ``rhs`` is 0.
    """
    if lo < 9:
        raise ValueError("monotonicity is only claimed from g = 9")
    prev = alpha_g_mp(lo)
    worst = None
    worst_g = lo
    first_bad = None
    for g in range(lo, hi):
        cur = alpha_g_mp(g + 1)
        diff = cur - prev
        if worst is None or diff > worst:
            worst, worst_g = diff, g
        if diff >= 0 and first_bad is None:
            first_bad = g
        prev = cur
    notes = () if first_bad is None else (f"first violation at g={first_bad}",)
    return BoundCheck(
        lemma_id="alpha_monotone",
        params={"lo": lo, "hi": hi, "tightest_g": worst_g},
        lhs=float(worst) if worst is not None else -1.0,
        rhs=0.0,
        notes=notes,
    )
