import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitpatterns import expansion as ex
from digitpatterns.errors import BudgetError, ValidationError
from oracles import brute_order, coset, long_division_digits, trial_division_is_prime, window_codes

PRIMES = [p for p in range(3, 1500) if trial_division_is_prime(p)]


def seen_codes(report):
    return set(np.flatnonzero(report.seen).tolist())


def test_fraction_spec_validation():
    with pytest.raises(ValidationError):
        ex.FractionSpec(2, 4, 10)
    with pytest.raises(ValidationError):
        ex.FractionSpec(0, 7, 10)
    with pytest.raises(ValidationError):
        ex.FractionSpec(7, 7, 10)
    with pytest.raises(ValidationError):
        ex.FractionSpec(1, 7, 1)


@pytest.mark.parametrize("m,n,g,t,digits", [
    (1, 7, 10, 6, [1, 4, 2, 8, 5, 7]),
    (1, 3, 10, 1, [3]),
    (2, 7, 10, 6, [2, 8, 5, 7, 1, 4]),
    (1, 13, 3, 3, long_division_digits(1, 13, 3, 3)),
])
def test_expand_examples(m, n, g, t, digits):
    period = ex.expand(ex.FractionSpec(m, n, g))
    assert period.t == t
    assert period.digits.tolist() == digits


@given(st.integers(2, 3000), st.integers(2, 16), st.data())
@settings(max_examples=200, deadline=None)
def test_expand_matches_exact_long_division(n, g, data):
    if math.gcd(n, g) != 1:
        return
    m = data.draw(st.integers(1, n - 1))
    if math.gcd(m, n) != 1:
        return
    period = ex.expand(ex.FractionSpec(m, n, g))
    assert period.t == brute_order(g, n)
    # two periods, to confirm pure periodicity
    assert long_division_digits(m, n, g, 2 * period.t) == period.digits.tolist() * 2


def test_digit_string_large_base():
    period = ex.expand(ex.FractionSpec(1, 7, 16))
    assert period.digit_string() == ".".join(str(d) for d in long_division_digits(1, 7, 16, period.t))


def test_coverage_sliding_examples():
    spec = ex.FractionSpec(1, 7, 10)
    r1 = ex.coverage_sliding(spec, 1)
    assert r1.T == 6 and seen_codes(r1) == {1, 2, 4, 5, 7, 8}
    r2 = ex.coverage_sliding(spec, 2)
    assert r2.T == 6 and seen_codes(r2) == {14, 42, 28, 85, 57, 71}
    r = ex.coverage_sliding(ex.FractionSpec(1, 3, 10), 1)
    assert r.T == 1 and seen_codes(r) == {3}


def test_coverage_orbit_examples():
    spec = ex.FractionSpec(1, 7, 10)
    r2 = ex.coverage_orbit(spec, 2)
    # floor(100 a / 7) for a = 1, 3, 2, 6, 4, 5
    assert seen_codes(r2) == {100 * a // 7 for a in (1, 3, 2, 6, 4, 5)} == {14, 42, 28, 85, 57, 71}
    assert r2.T == 6
    assert ex.coverage_orbit(spec, 1).T == 6
    r3 = ex.coverage_orbit(spec, 3)
    assert r3.T <= r3.t < r3.size


def test_coverage_orbit_requires_prime():
    with pytest.raises(ValidationError):
        ex.coverage_orbit(ex.FractionSpec(1, 21, 10), 1)


def test_coverage_budget():
    with pytest.raises(BudgetError):
        ex.coverage_sliding(ex.FractionSpec(1, 7, 10), 5, budget=10_000)
    with pytest.raises(BudgetError):
        ex.coverage_orbit(ex.FractionSpec(1, 7, 10), 5, budget=10_000)


def test_zero_window_counts_empty_string():
    r = ex.coverage_orbit(ex.FractionSpec(1, 101, 10), 0)
    assert r.T == 1 and r.size == 1 and r.full


def test_coverage_matches_brute_force_windows():
    rng = random.Random(5)
    for _ in range(150):
        p = rng.choice(PRIMES)
        g = rng.choice([2, 3, 5, 7, 10, 12])
        if g % p == 0:
            continue
        m = rng.randrange(1, p)
        spec = ex.FractionSpec(m, p, g)
        t = brute_order(g, p)
        digits = long_division_digits(m, p, g, t)
        for k in range(1, 5):
            if g**k > 20_000:
                break
            expected = window_codes(digits, k, g)
            s = ex.coverage_sliding(spec, k)
            o = ex.coverage_orbit(spec, k)
            assert seen_codes(s) == expected == seen_codes(o)
            assert s.T == len(expected) <= min(t, g**k)


def test_coverage_composite_denominator():
    for n, g in [(21, 10), (49, 10), (91, 2), (1001, 10), (999, 2)]:
        for m in range(1, n):
            if math.gcd(m, n) != 1:
                continue
            spec = ex.FractionSpec(m, n, g)
            t = brute_order(g, n)
            digits = long_division_digits(m, n, g, t)
            for k in (1, 2, 3):
                assert seen_codes(ex.coverage_sliding(spec, k)) == window_codes(digits, k, g)


def test_coverage_invariants():
    rng = random.Random(6)
    for _ in range(80):
        p = rng.choice(PRIMES)
        g = rng.choice([2, 3, 10])
        if g % p == 0:
            continue
        m = rng.randrange(1, p)
        spec = ex.FractionSpec(m, p, g)
        period = ex.expand(spec)
        prev = None
        for k in range(1, 7):
            if g**k > 50_000:
                break
            rep = ex.coverage_sliding(spec, k, period=period)
            assert rep.T <= min(period.t, g**k)
            # every window occurs in the period written out twice (enough copies once k > t)
            twice = period.digits.tolist() * max(2, -(-k // period.t) + 1)
            text = [tuple(twice[r:r + k]) for r in range(len(twice) - k + 1)]
            for D in np.flatnonzero(rep.seen).tolist():
                word = tuple(int(c) for c in np.base_repr(D, g).zfill(k))
                assert word in text
            if prev is not None:
                assert rep.T <= g * prev.T
            prev = rep
        # coset invariance: m and m*g mod p have the same windows
        shifted = ex.FractionSpec(m * g % p, p, g)
        for k in (1, 2, 3):
            assert np.array_equal(ex.coverage_orbit(spec, k).seen, ex.coverage_orbit(shifted, k).seen)


def test_coset_representatives_examples():
    assert ex.coset_representatives(7, 10) == [1]
    assert ex.coset_representatives(13, 3) == [1, 2, 4, 7]
    assert ex.coset_representatives(101, 2) == [1]  # 2 is a primitive root mod 101
    assert ex.coset_representatives(13, 3, limit=2) == [1, 2]


def test_coset_representatives_brute(backend):
    for p in PRIMES[:120]:
        for g in (2, 3, 10):
            if g % p == 0:
                continue
            expected, covered = [], set()
            for m in range(1, p):
                if m not in covered:
                    expected.append(m)
                    covered.update(coset(p, g, m))
            t = brute_order(g, p)
            got = backend["coset_reps"](p, g % p, t, len(expected) + 5).tolist()
            assert got == expected
            assert len(got) == (p - 1) // t


def test_threshold_k_examples():
    assert ex.threshold_k(1000003, 10, Fraction(5, 24), 0.01) == 1
    assert ex.threshold_k(1000003, 10, Fraction(5, 24), Fraction(5, 24)) == 0
    assert ex.threshold_k(1048583, 2, Fraction(5, 24), 0) == 4
    assert ex.threshold_k(1048583, 2, "5/24") == 4


def test_threshold_k_exact_boundary():
    # (1/2) * log_2(2^20) = 10 exactly, and 2^20 - 1 falls just short
    assert ex.threshold_k(2**20, 2, Fraction(1, 2)) == 10
    assert ex.threshold_k(2**20 - 1, 2, Fraction(1, 2)) == 9
    assert ex.threshold_k(10**6, 10, Fraction(1, 2)) == 3
    assert ex.threshold_k(10**6 - 1, 10, Fraction(1, 2)) == 2


@given(st.integers(2, 10**9), st.integers(2, 20), st.integers(1, 50), st.integers(1, 50))
def test_threshold_k_brute(p, g, a, b):
    c = Fraction(min(a, b), max(a, b))
    k = ex.threshold_k(p, g, c)
    # k is the largest integer with g^(k*den) <= p^num
    assert g ** (k * c.denominator) <= p**c.numerator
    assert g ** ((k + 1) * c.denominator) > p**c.numerator


def test_backend_kernels_agree_on_coverage(backend):
    rng = random.Random(9)
    for _ in range(60):
        p = rng.choice(PRIMES)
        g = rng.choice([2, 10])
        if g % p == 0:
            continue
        m = rng.randrange(1, p)
        t = brute_order(g, p)
        digits, last = backend["cyclic_digits"](m, p, g, t)
        assert int(last) == m
        assert digits.tolist() == long_division_digits(m, p, g, t)
        for k in (1, 2, 3):
            expected = window_codes(digits.tolist(), k, g)
            s = backend["sliding_seen"](digits, k, g, g**k)
            o = backend["orbit_seen"](m, g % p, p, t, g**k)
            assert set(np.flatnonzero(s).tolist()) == expected == set(np.flatnonzero(o).tolist())
