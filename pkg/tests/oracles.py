"""Brute-force reference implementations.

Nothing here imports from ``digitpatterns``; each function follows the
plain definition of the quantity it computes.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def trial_division_factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def lucas_lehmer(q: int) -> bool:
    """Primality of the Mersenne number ``2**q - 1`` for odd prime ``q``."""
    M = (1 << q) - 1
    s = 4
    for _ in range(q - 2):
        s = (s * s - 2) % M
    return s == 0


def limb_mul_mod(a: int, b: int, n: int) -> int:
    """``a*b mod n`` from 32-bit limbs, reducing the 128-bit product by shift-and-subtract."""
    mask = (1 << 32) - 1
    a0, a1 = a & mask, a >> 32
    b0, b1 = b & mask, b >> 32
    lo = a0 * b0
    mid = a0 * b1 + a1 * b0
    hi = a1 * b1
    prod = lo + (mid << 32) + (hi << 64)
    r = 0
    for bit in range(prod.bit_length() - 1, -1, -1):
        r = (r << 1) | ((prod >> bit) & 1)
        if r >= n:
            r -= n
    return r


def brute_order(g: int, n: int) -> int:
    g %= n
    x, t = g, 1
    while x != 1:
        x = x * g % n
        t += 1
    return t


def long_division_digits(m: int, n: int, g: int, count: int) -> list[int]:
    """First ``count`` base-``g`` digits of ``m/n`` via exact rationals."""
    x = Fraction(m, n)
    out = []
    for _ in range(count):
        x *= g
        d = math.floor(x)
        out.append(d)
        x -= d
    return out


def window_codes(digits: list[int], k: int, g: int) -> set[int]:
    """Codes of all cyclic length-``k`` windows of a period, read as base-``g`` numbers."""
    t = len(digits)
    doubled = digits * (k // t + 2)
    codes = set()
    for r in range(t):
        code = 0
        for d in doubled[r:r + k]:
            code = code * g + d
        codes.add(code)
    return codes


def coset(p: int, g: int, m: int) -> list[int]:
    out, a = set(), m % p
    while a not in out:
        out.add(a)
        a = a * g % p
    return sorted(out)


def brute_avoiding(p: int, elements, H: int) -> set[int]:
    el = set(elements)
    return {u for u in range(p) if not any((u + x) % p in el for x in range(H))}


def brute_N(p: int, elements, h: int) -> int:
    rng = [x for x in range(-h, h + 1) if x]
    return sum(1 for u in elements for x in rng for y in rng if (u * x - y) % p == 0)


def brute_M(p: int, elements, h: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for a in range(-h, h + 1):
        if a == 0:
            continue
        for w in elements:
            lam = a * w % p
            out[lam] = out.get(lam, 0) + 1
    return out


def brute_Q(p: int, elements, Z: int, s: int) -> list[int]:
    import itertools

    q = [0] * p
    for v in elements:
        for xs in itertools.product(range(Z), repeat=s):
            q[(v - sum(xs)) % p] += 1
    return q


def direct_power(p: int, elements, lam: int) -> float:
    s = sum(cmath.exp(2j * math.pi * lam * v / p) for v in elements)
    return abs(s) ** 2
