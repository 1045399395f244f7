"""Digit reversal of primes in a fixed base: census, exponential sums and circle-method tooling."""
from .census import ApQuery, census, main_term, predict, reversed_prime_count, rho
from .checks import BoundCheck
from .constants import alpha_g, c_g, threshold_scan
from .digits import DigitString, GnWindow, reverse

__version__ = "0.1.0"

__all__ = [
    "ApQuery",
    "BoundCheck",
    "DigitString",
    "GnWindow",
    "alpha_g",
    "c_g",
    "census",
    "main_term",
    "predict",
    "reverse",
    "reversed_prime_count",
    "rho",
    "threshold_scan",
]
