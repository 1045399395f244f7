"""Enumeration cap and shared exceptions."""
from __future__ import annotations

import os

DEFAULT_ENUM_CAP = 10**8
ENUM_CAP_ENV = "REVPRIME_ENUM_CAP"


class EnumerationCapError(ValueError):
    """Raised when an exhaustive enumeration would exceed the configured cap."""


def enum_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(float(raw))
    except ValueError as exc:
        raise ValueError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 2:
        raise ValueError(f"{ENUM_CAP_ENV} must be >= 2, got {cap}")
    return cap


def check_cap(size: int, what: str = "enumeration") -> None:
    cap = enum_cap()
    if size > cap:
        raise EnumerationCapError(
            f"{what} of size {size} exceeds the enumeration cap {cap} "
            f"(override with {ENUM_CAP_ENV})"
        )


def check_base(g: int) -> int:
    if isinstance(g, bool) or int(g) != g or g < 2:
        raise ValueError(f"base must be an integer >= 2, got {g!r}")
    return int(g)


def check_positive(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n!r}")
    return int(n)
