from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

# Tolerances for exact-mode checks.
POINTWISE_TOL = 1e-9
SINGLE_ROW_TOL = 1e-6
DISCRETE_RTOL = 1e-9
QUADRATURE_RTOL = 1e-3
QUAD_POINTS_PER_CELL = 64


@dataclass(frozen=True)
class SampleGrid:
    g_list: tuple[int, ...]
    N_list: tuple[int, ...] = (3,)
    samples: int = 100
    seed: int = 0
    max_size: int = 10**6
    extra: dict = field(default_factory=dict)

    def cells(self) -> list[tuple[int, int]]:
        return [(g, N) for g in self.g_list for N in self.N_list if g**N <= self.max_size]

    def rng(self, *key: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, *key])

    def with_seed(self, seed: int) -> "SampleGrid":
        return SampleGrid(self.g_list, self.N_list, self.samples, seed, self.max_size, dict(self.extra))

    @classmethod
    def from_file(cls, path: str | Path) -> "SampleGrid":
        raw = json.loads(Path(path).read_text())
        return cls(
            g_list=tuple(raw["g_list"]),
            N_list=tuple(raw.get("N_list", (3,))),
            samples=int(raw.get("samples", 100)),
            seed=int(raw.get("seed", 0)),
            max_size=int(raw.get("max_size", 10**6)),
            extra=dict(raw.get("extra", {})),
        )

    def to_dict(self) -> dict:
        return asdict(self)


def random_rational(rng: np.random.Generator, max_den: int) -> Fraction:
    den = int(rng.integers(2, max_den + 1))
    return Fraction(int(rng.integers(0, 4 * den)), den)


def dist_float(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return np.abs(x - np.round(x))


def inv_sin_cap(g: int, x: np.ndarray) -> np.ndarray:
    """``min(g, 1/|sin(pi x)|)`` with the zeros mapped to ``g``."""
    s = np.abs(np.sin(np.pi * np.asarray(x, dtype=np.float64)))
    with np.errstate(divide="ignore", over="ignore"):
        return np.minimum(g, 1.0 / s)
