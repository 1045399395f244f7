"""Numerical verification of the digit-sum inequalities.

Checkers come in two flavours.  Explicit-constant bounds yield exact-mode
records with a verdict; bounds with an unspecified implied constant yield
ratio-mode records that are only reported.
"""
from __future__ import annotations

from typing import Callable

from ..checks import BoundCheck
from ._core import SampleGrid
from .l1 import check_gallagher_sobolev, check_L1_continuous, check_L1_discrete, check_prelim_L1
from .pointwise import (
    check_consecutive_pair,
    check_deriv_bound,
    check_gaussian_decay,
    check_geometric_escape,
    check_monotone_majorant,
    check_phi_product_decay,
    check_single_row_L1,
    check_strong_bound,
)
from .ratios import measure_hybrid, measure_large_sieve, measure_linf_decay, measure_shift_classes

Checker = Callable[[SampleGrid], list[BoundCheck]]

CHECKERS: dict[str, Checker] = {
    "strong_bound": check_strong_bound,
    "deriv_bound": check_deriv_bound,
    "gaussian_decay": check_gaussian_decay,
    "monotone_majorant": check_monotone_majorant,
    "consecutive_pair": check_consecutive_pair,
    "geometric_escape": check_geometric_escape,
    "phi_product_decay": check_phi_product_decay,
    "single_row_L1": check_single_row_L1,
    "prelim_L1": check_prelim_L1,
    "L1_discrete": check_L1_discrete,
    "L1_continuous": check_L1_continuous,
    "gallagher_sobolev": check_gallagher_sobolev,
    "large_sieve": measure_large_sieve,
    "shift_classes": measure_shift_classes,
    "hybrid": measure_hybrid,
    "linf_decay": measure_linf_decay,
}

RATIO_CHECKERS = frozenset({"large_sieve", "shift_classes", "hybrid", "linf_decay"})

# Record ids emitted by a checker under a different name.
ALIASES = {
    "deriv_partial": "deriv_bound",
    "deriv_phi": "deriv_bound",
    "consecutive_max": "consecutive_pair",
    "L1_discrete_deriv": "L1_discrete",
    "L1_continuous_deriv": "L1_continuous",
}

_POINTWISE_G = (2, 3, 10, 100)
_L1_CELLS = {2: tuple(range(3, 13)), 3: tuple(range(3, 8)), 10: (3, 4, 5)}
_QUAD_CELLS = {2: tuple(range(3, 9)), 3: (3, 4, 5), 10: (3, 4)}


def _cells(table: dict[int, tuple[int, ...]], samples: int, **kw) -> list[SampleGrid]:
    return [SampleGrid((g,), Ns, samples, **kw) for g, Ns in table.items()]


def _preset_default() -> dict[str, list[SampleGrid]]:
    big = 10**12
    return {
        "strong_bound": [SampleGrid((2, 3, 10, 100, 31699), samples=10**4)],
        "deriv_bound": [SampleGrid(_POINTWISE_G, samples=10**4)],
        "gaussian_decay": [SampleGrid(_POINTWISE_G, samples=10**4)],
        "monotone_majorant": [SampleGrid(_POINTWISE_G, samples=10**4)],
        "consecutive_pair": [SampleGrid((2, 3, 10), samples=10**4)],
        "geometric_escape": [SampleGrid((2, 3, 10, 16), samples=10**4)],
        "phi_product_decay": [SampleGrid((2, 3, 10), tuple(range(4, 11)), 1500, max_size=big)],
        "single_row_L1": [SampleGrid(tuple(range(2, 51)), samples=10**4)],
        "prelim_L1": _cells(_L1_CELLS, 100),
        "L1_discrete": _cells(_L1_CELLS, 100),
        "L1_continuous": _cells(_QUAD_CELLS, 100),
        "gallagher_sobolev": _cells(_QUAD_CELLS, 100),
        "large_sieve": [SampleGrid((2, 3, 10), (3, 4, 5, 6), 3)],
        "shift_classes": [SampleGrid((2, 3, 10), (3, 4), 2)],
        "hybrid": [SampleGrid((2,), tuple(range(8, 15)), 2), SampleGrid((3,), (8, 9, 10), 2, max_size=10**5)],
        "linf_decay": [SampleGrid((2, 3, 10), (4, 5, 6, 7, 8), 3, max_size=big)],
    }


def _preset_quick() -> dict[str, list[SampleGrid]]:
    small = {2: (3, 5), 3: (3, 4), 10: (3,)}
    return {
        "strong_bound": [SampleGrid((2, 10, 31699), samples=200)],
        "deriv_bound": [SampleGrid((2, 10), samples=200)],
        "gaussian_decay": [SampleGrid((2, 10), samples=200)],
        "monotone_majorant": [SampleGrid((2, 10), samples=200)],
        "consecutive_pair": [SampleGrid((2, 10), samples=200)],
        "geometric_escape": [SampleGrid((2, 10), samples=200)],
        "phi_product_decay": [SampleGrid((2, 10), (4, 6), 50)],
        "single_row_L1": [SampleGrid((2, 3, 10), samples=200)],
        "prelim_L1": _cells(small, 5),
        "L1_discrete": _cells(small, 5),
        "L1_continuous": _cells({2: (3, 4), 10: (3,)}, 3),
        "gallagher_sobolev": _cells({2: (3, 4), 3: (4,)}, 6),
        "large_sieve": [SampleGrid((2, 10), (3,), 1)],
        "shift_classes": [SampleGrid((2,), (3,), 1, extra={"R_list": (2,)})],
        "hybrid": [SampleGrid((2,), (8,), 1, extra={"R_list": (1, 2)})],
        "linf_decay": [SampleGrid((2, 10), (4,), 1, extra={"q_list": (7,)})],
    }


PRESETS = {"default": _preset_default, "quick": _preset_quick}


def resolve(lemma: str) -> list[str]:
    """Checker names selected by ``lemma`` (``all``, a checker name, or a record id)."""
    if lemma == "all":
        return list(CHECKERS)
    name = ALIASES.get(lemma, lemma)
    if name not in CHECKERS:
        raise KeyError(f"unknown lemma id {lemma!r}; choose from {', '.join(sorted(CHECKERS))} or 'all'")
    return [name]


def preset_grids(preset: str, name: str) -> list[SampleGrid]:
    if preset not in PRESETS:
        raise KeyError(f"unknown grid preset {preset!r}; choose from {', '.join(PRESETS)}")
    return PRESETS[preset]()[name]


def run_checks(
    lemma: str = "all",
    preset: str = "default",
    seed: int = 0,
    grid: SampleGrid | None = None,
) -> list[BoundCheck]:
    """Run the selected checkers and return their records in canonical order.

    ``grid`` replaces the preset grids for every selected checker.
    """
    out: list[BoundCheck] = []
    for name in resolve(lemma):
        grids = [grid] if grid is not None else preset_grids(preset, name)
        for gr in grids:
            out.extend(CHECKERS[name](gr.with_seed(seed)))
    out.sort(key=BoundCheck.sort_key)
    return out


def violations(records: list[BoundCheck]) -> list[BoundCheck]:
    return [r for r in records if r.verdict is False]


__all__ = [
    "BoundCheck",
    "SampleGrid",
    "CHECKERS",
    "RATIO_CHECKERS",
    "PRESETS",
    "resolve",
    "preset_grids",
    "run_checks",
    "violations",
]
