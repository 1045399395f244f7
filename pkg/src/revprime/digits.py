"""Base-g digit codec, digital reversal and the length-N window.

Digits are stored least-significant first, so ``digits[i]`` is the
coefficient of ``g**i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from ._config import check_base, check_cap, check_positive


@dataclass(frozen=True)
class DigitString:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.base)
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError(f"digit out of range for base {self.base}: {self.digits}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("most significant digit must be nonzero")

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        return from_digits(self)

    def display(self) -> str:
        """Most-significant-first rendering, e.g. ``'1,0,1'``."""
        return ",".join(str(d) for d in reversed(self.digits))


@dataclass(frozen=True)
class GnWindow:
    """Integers of exactly ``length`` base-``base`` digits with nonzero lowest digit."""

    base: int
    length: int

    def __post_init__(self) -> None:
        check_base(self.base)
        check_positive(self.length, "length")

    @property
    def lo(self) -> int:
        return self.base ** (self.length - 1)

    @property
    def hi(self) -> int:
        return self.base**self.length

    def __len__(self) -> int:
        g, N = self.base, self.length
        if N == 1:
            return g - 1
        return (g - 1) ** 2 * g ** (N - 2)

    def __contains__(self, n: object) -> bool:
        return isinstance(n, (int, np.integer)) and self.lo <= n < self.hi and n % self.base != 0


def to_digits(n: int, g: int) -> DigitString:
    g = check_base(g)
    n = check_positive(n)
    out = []
    while n:
        n, d = divmod(n, g)
        out.append(d)
    return DigitString(g, tuple(out))


def from_digits(ds: DigitString | Sequence[int], g: int | None = None) -> int:
    if isinstance(ds, DigitString):
        g, digits = ds.base, ds.digits
    else:
        if g is None:
            raise TypeError("base required for a bare digit sequence")
        digits = tuple(ds)
    value = 0
    for d in reversed(digits):
        value = value * g + d
    return value


def reverse(n: int, g: int) -> int:
    """Digital reverse of ``n`` in base ``g``.

    Defined for every positive ``n``; trailing zeros of ``n`` become leading
    zeros and vanish, so ``reverse(1300, 10) == 31``.
    """
    g = check_base(g)
    n = check_positive(n)
    r = 0
    while n:
        n, d = divmod(n, g)
        r = r * g + d
    return r


def reverse_array(values: np.ndarray, g: int, length: int) -> np.ndarray:
    """Vectorised reversal of ``length``-digit integers (int64)."""
    x = np.asarray(values, dtype=np.int64).copy()
    out = np.zeros_like(x)
    for _ in range(length):
        x, d = np.divmod(x, g)
        out = out * g + d
    return out


def gn_members(w: GnWindow) -> np.ndarray:
    """Elements of the window in increasing order."""
    check_cap(w.hi, f"window g^N = {w.base}^{w.length}")
    n = np.arange(w.lo, w.hi, dtype=np.int64)
    return n[n % w.base != 0]


def iter_gn(w: GnWindow) -> Iterator[int]:
    check_cap(w.hi, f"window g^N = {w.base}^{w.length}")
    for n in range(w.lo, w.hi):
        if n % w.base:
            yield n


def reverse_mod_qsq(n: int, w: GnWindow, m: int) -> int:
    """Residue of ``reverse(n)`` modulo a divisor ``m`` of ``g**2 - 1``.

    Uses ``rev(n) = g**(N-1) * n (mod g**2 - 1)``, which holds on the window.
    """
    g = w.base
    if m < 1 or (g * g - 1) % m:
        raise ValueError(f"modulus {m} does not divide g^2-1 = {g * g - 1}")
    if n not in w:
        raise ValueError(f"{n} is not in the window (g={g}, N={w.length})")
    return pow(g, w.length - 1, m) * n % m
