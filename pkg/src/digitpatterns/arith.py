"""Exact integer arithmetic: modular products and powers, primality,
factorization, multiplicative order and prime enumeration.

Python integers are unbounded, so every modular product below is formed
exactly before reduction; the 64-bit cap only bounds what :func:`is_prime`
certifies.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import kernels
from .errors import BudgetError, ValidationError

# Deterministic Miller-Rabin with the first twelve primes as bases is exact
# for every n < 318665857834031151167461 (Sorenson and Webster, 2015),
# which covers the whole unsigned 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_LIMIT = 318665857834031151167461

TRIAL_DIVISION_BOUND = 100_000
DEFAULT_SEGMENT = 1 << 20
DEFAULT_SPAN_BUDGET = 10**9


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for q, e in self.factors:
            prod *= q**e
        if prod != self.value:
            raise ValidationError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def mul_mod(a: int, b: int, n: int) -> int:
    assert n >= 2 and 0 <= a < n and 0 <= b < n
    return (a * b) % n


def pow_mod(a: int, e: int, n: int) -> int:
    """Right-to-left square-and-multiply."""
    assert n >= 2 and 0 <= a < n and e >= 0
    result = 1 % n
    base = a
    while e:
        if e & 1:
            result = (result * base) % n
        base = (base * base) % n
        e >>= 1
    return result


@lru_cache(maxsize=None)
def small_primes(bound: int = TRIAL_DIVISION_BOUND) -> np.ndarray:
    """All primes ``<= bound`` by a plain (unsegmented) sieve."""
    if bound < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(bound + 1, dtype=np.bool_)
    sieve[:2] = False
    for q in range(2, math.isqrt(bound) + 1):
        if sieve[q]:
            sieve[q * q::q] = False
    out = np.flatnonzero(sieve).astype(np.int64)
    out.flags.writeable = False
    return out


def _mr_round(n: int, a: int, d: int, r: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n < 41 * 41:
        return True
    if n >= MR_LIMIT:
        raise ValidationError(f"{n} is beyond the deterministic primality range")
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    return all(_mr_round(n, a, d, r) for a in _MR_BASES)


def _brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of the odd composite ``n`` (Pollard rho, Brent's cycle search)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # batch overshot; back up one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, rng: random.Random, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, rng, out)
        _split(r, rng, out)
        return
    d = _brent(n, rng)
    _split(d, rng, out)
    _split(n // d, rng, out)


def factorize(n: int) -> FactoredInteger:
    if n < 1:
        raise ValidationError(f"cannot factor {n}")
    value = n
    found: dict[int, int] = {}
    for q in small_primes().tolist():
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            found[q] = e
    if n > 1:
        # seeded from the input so repeated calls take the same path
        _split(n, random.Random(n), found)
    return FactoredInteger(value, tuple(sorted(found.items())))


def carmichael(n: int) -> int:
    """Exponent of the unit group mod ``n``."""
    lam = 1
    for q, e in factorize(n).factors:
        if q == 2 and e >= 3:
            part = 2 ** (e - 2)
        else:
            part = (q - 1) * q ** (e - 1)
        lam = lam * part // math.gcd(lam, part)
    return lam


def multiplicative_order(g: int, n: int) -> int:
    """Smallest ``t >= 1`` with ``g**t == 1 (mod n)``.

    Starts from the group exponent (``n - 1`` for prime ``n``) and strips
    prime factors while the power stays 1.
    """
    if n < 2:
        raise ValidationError("modulus must be at least 2")
    g %= n
    if g == 0 or math.gcd(g, n) != 1:
        raise ValidationError(f"{g} is not a unit modulo {n}")
    exponent = n - 1 if is_prime(n) else carmichael(n)
    t = exponent
    for q, _ in factorize(exponent).factors:
        while t % q == 0 and pow(g, t // q, n) == 1:
            t //= q
    return t


def primes_in_range(
    A: int,
    B: int,
    segment: int = DEFAULT_SEGMENT,
    span_budget: int = DEFAULT_SPAN_BUDGET,
) -> Iterator[int]:
    """Primes in ``[A, B]`` in increasing order, by a segmented sieve."""
    if B < A:
        raise ValidationError(f"empty range [{A}, {B}]")
    if A < 2:
        raise ValidationError("range must start at 2 or above")
    if B - A + 1 > span_budget:
        raise BudgetError(f"range of {B - A + 1} integers exceeds the budget {span_budget}")
    kernels.check_kernel_modulus(B)
    base = small_primes(math.isqrt(B))
    lo = A
    while lo <= B:
        hi = min(B, lo + segment - 1)
        seg = kernels.sieve_segment(lo, hi, base)
        for off in np.flatnonzero(seg).tolist():
            yield lo + off
        lo = hi + 1


def prime_list(A: int, B: int) -> list[int]:
    return list(primes_in_range(A, B))
