import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revprime.census import (
    ApQuery,
    census,
    main_term,
    n0,
    predict,
    prime_indicator,
    residue_counts,
    reversed_prime_count,
    rho,
    sieve_primes,
    structural_modulus,
)
from revprime.digits import GnWindow

# Frozen from a sympy.isprime + string-reversal brute force.
TWO_DIGIT_PRIMES = 21
G10_N4_Q7 = [162, 162, 142, 146, 144, 158, 147]
G2_N10_Q15 = [0, 8, 9, 0, 4, 7, 0, 10, 7, 0, 7, 10, 0, 9, 4]


def test_apquery_normalizes():
    assert ApQuery(10, 7).a == 3
    assert ApQuery(-1, 7).a == 6
    with pytest.raises(ValueError):
        ApQuery(1, 0)


@pytest.mark.parametrize(
    "lo, hi, expected",
    [
        (2, 10, [2, 3, 5, 7]),
        (90, 100, [97]),
        (10**6, 10**6 + 100, [1000003, 1000033, 1000037, 1000039, 1000081, 1000099]),
    ],
)
def test_sieve_examples(lo, hi, expected):
    assert sieve_primes(lo, hi).tolist() == expected


def test_sieve_crosses_segments():
    # a range straddling the internal segment boundary
    lo, hi = (1 << 20) - 200, (1 << 20) + 200
    got = sieve_primes(lo, hi).tolist()
    expected = [n for n in range(lo, hi) if all(n % d for d in range(2, math.isqrt(n) + 1))]
    assert got == expected


def test_prime_indicator_counts():
    ind = prime_indicator(10**5)
    assert ind.sum() == 9592
    assert not ind.flags.writeable


def test_reversed_prime_count_examples():
    assert reversed_prime_count(GnWindow(10, 2), ApQuery(0, 1)) == TWO_DIGIT_PRIMES
    # rev(p) mod 10 is the leading digit: 31 and 37
    assert reversed_prime_count(GnWindow(10, 2), ApQuery(3, 10)) == 2
    assert reversed_prime_count(GnWindow(2, 3), ApQuery(1, 2)) == 2


def test_residue_counts_frozen():
    assert residue_counts(GnWindow(10, 4), 7).tolist() == G10_N4_Q7
    assert residue_counts(GnWindow(2, 10), 15).tolist() == G2_N10_Q15


def test_main_term_examples():
    w3 = GnWindow(10, 3)
    total = reversed_prime_count(w3, ApQuery(0, 1))
    assert total == 143
    assert main_term(w3, ApQuery(0, 1)) == total
    assert main_term(w3, ApQuery(1, 3)) == 69
    assert main_term(w3, ApQuery(5, 7)) == Fraction(143, 7)
    assert main_term(GnWindow(10, 4), ApQuery(3, 7)) == Fraction(1061, 7)


def test_structural_modulus():
    assert structural_modulus(GnWindow(10, 3), 7) == 1
    assert structural_modulus(GnWindow(10, 3), 33) == 33
    assert structural_modulus(GnWindow(10, 3), 16) == 8


@pytest.mark.parametrize(
    "g, a, q, expected",
    [(10, 3, 7, Fraction(9, 10)), (10, 2, 11, Fraction(99, 100)), (10, 11, 33, Fraction(0)), (10, 0, 5, Fraction(1, 2)), (10, 0, 20, Fraction(0))],
)
def test_rho_examples(g, a, q, expected):
    assert rho(g, ApQuery(a, q)) == expected


@pytest.mark.parametrize("g, q, N, expected", [(10, 7, 5, 1), (10, 4, 5, 2), (10, 50, 5, 2), (2, 8, 2, 2)])
def test_n0_examples(g, q, N, expected):
    assert n0(g, q, N) == expected


def test_predict_examples():
    assert predict(GnWindow(10, 2), ApQuery(0, 1)) == pytest.approx(0.9 * 100 / (2 * math.log(10)))
    assert predict(GnWindow(10, 2), ApQuery(0, 1)) == pytest.approx(19.54, abs=0.01)
    assert predict(GnWindow(10, 6), ApQuery(3, 7)) == pytest.approx(9306.31, abs=0.01)
    assert predict(GnWindow(10, 6), ApQuery(11, 33)) == 0.0


def test_census_record_consistency():
    rec = census(GnWindow(10, 4), ApQuery(3, 7))
    assert rec.count == 146
    assert rec.remainder == rec.count - rec.main_term == Fraction(-39, 7)
    assert rec.rho == Fraction(9, 10) and rec.n0 == 1
    row = rec.as_row()
    assert row["main_term"] == "1061/7"


CENSUS_GRID = [(2, 8), (2, 10), (3, 5), (10, 3), (10, 4), (16, 3)]


@pytest.mark.parametrize("g, N", CENSUS_GRID)
def test_additivity_and_degenerate_classes(g, N):
    w = GnWindow(g, N)
    total = reversed_prime_count(w, ApQuery(0, 1))
    for q in range(1, 40):
        counts = residue_counts(w, q)
        assert counts.sum() == total
        for a in range(q):
            d = math.gcd(math.gcd(a, q), g * g - 1)
            if d > 1:
                assert counts[a] <= sum(1 for p in range(2, q + 1) if q % p == 0 and all(p % s for s in range(2, p)))
            if math.gcd(a, q) % g == 0:
                assert counts[a] == 0


@pytest.mark.parametrize("g, N", CENSUS_GRID)
def test_remainder_vanishes_for_structured_moduli(g, N):
    w = GnWindow(g, N)
    G = (g * g - 1) * g**N
    for q in [d for d in range(1, 200) if G % d == 0]:
        counts = residue_counts(w, q)
        for a in range(q):
            assert main_term(w, ApQuery(a, q)) == counts[a]


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 40), st.integers(1, 120))
def test_rho_sums_to_nonzero_digit_density(g, q):
    # The exact identity sum_a rho = q (1 - 1/g) holds on every tested (g, q).
    assert sum(rho(g, ApQuery(a, q)) for a in range(q)) == q * Fraction(g - 1, g)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 40), st.integers(1, 200), st.integers(0, 10**6))
def test_rho_vanishes_exactly_in_degenerate_cases(g, q, a):
    r = rho(g, ApQuery(a, q))
    a %= q
    degenerate = math.gcd(math.gcd(a, q), g * g - 1) > 1 or math.gcd(a, q) % g == 0
    assert (r == 0) == degenerate
    assert r >= 0


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(10, 5), (2, 12), (3, 7)]), st.integers(1, 60))
def test_predict_sums_to_full_prediction_for_coprime_q(gn, q):
    g, N = gn
    if math.gcd(q, g * (g * g - 1)) != 1:
        return
    w = GnWindow(g, N)
    total = sum(predict(w, ApQuery(a, q)) for a in range(q))
    assert total == pytest.approx(predict(w, ApQuery(0, 1)), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 30), st.integers(1, 500), st.integers(1, 12))
def test_n0_definition(g, q, N):
    k = n0(g, q, N)
    assert 1 <= k <= N
    assert math.gcd(q, g**k) == math.gcd(q, g**N)
    assert all(math.gcd(q, g**j) != math.gcd(q, g**N) for j in range(1, k))
