"""Purely periodic g-ary expansions of m/n and distinct-window counts.

For a fraction ``m/n`` with ``gcd(n, g*m) == 1`` the digit sequence repeats
with period ``t = ord_n(g)``.  A window of length ``k`` starting at position
``r`` is identified with its code ``D = d_1 g^(k-1) + ... + d_k``.  Windows are
read cyclically, so all ``t`` starting positions are counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .arith import is_prime, multiplicative_order
from .errors import BudgetError, InvariantError, ValidationError

DEFAULT_CODE_BUDGET = 1 << 28


@dataclass(frozen=True)
class FractionSpec:
    m: int
    n: int
    g: int

    def __post_init__(self):
        if self.g < 2:
            raise ValidationError(f"base must be at least 2, got {self.g}")
        if not 0 < self.m < self.n:
            raise ValidationError(f"need 0 < m < n, got m={self.m}, n={self.n}")
        if math.gcd(self.n, self.g * self.m) != 1:
            raise ValidationError(
                f"gcd(n, g*m) != 1 for m={self.m}, n={self.n}, g={self.g}: "
                "expansion is not purely periodic"
            )


@dataclass(frozen=True)
class ExpansionPeriod:
    spec: FractionSpec
    t: int
    digits: np.ndarray = field(repr=False)

    def digit_string(self, limit: int | None = None) -> str:
        """Digits as text; bases above 10 use dot-separated decimal digits."""
        ds = self.digits if limit is None else self.digits[:limit]
        if self.spec.g <= 10:
            return "".join(str(int(d)) for d in ds)
        return ".".join(str(int(d)) for d in ds)


@dataclass
class CoverageReport:
    spec: FractionSpec
    k: int
    t: int
    seen: np.ndarray = field(repr=False)
    T: int = 0

    def __post_init__(self):
        self.T = int(np.count_nonzero(self.seen))

    @property
    def size(self) -> int:
        return int(self.seen.shape[0])

    @property
    def missing(self) -> np.ndarray:
        return np.flatnonzero(~self.seen)

    @property
    def full(self) -> bool:
        return self.T == self.size


def _check_kernel_range(spec: FractionSpec) -> None:
    kernels.check_kernel_modulus(spec.n)
    kernels.check_kernel_modulus(spec.g)


def expand(spec: FractionSpec) -> ExpansionPeriod:
    """One full period of the expansion by long division."""
    _check_kernel_range(spec)
    t = multiplicative_order(spec.g, spec.n)
    digits, last = kernels.cyclic_digits(spec.m, spec.n, spec.g, t)
    if int(last) != spec.m:
        raise InvariantError(f"remainder after {t} steps is {last}, expected {spec.m}")
    return ExpansionPeriod(spec, t, np.asarray(digits, dtype=np.int64))


def _window_budget(g: int, k: int, budget: int) -> int:
    if k < 0:
        raise ValidationError(f"window length must be nonnegative, got {k}")
    size = g**k
    if size > budget:
        raise BudgetError(f"g^k = {g}^{k} = {size} codes exceeds the budget of {budget}")
    return size


def _empty_window(spec: FractionSpec, t: int) -> CoverageReport:
    # k = 0: the empty string is the only window
    return CoverageReport(spec, 0, t, np.ones(1, dtype=np.bool_))


def coverage_sliding(
    spec: FractionSpec,
    k: int,
    budget: int = DEFAULT_CODE_BUDGET,
    period: ExpansionPeriod | None = None,
) -> CoverageReport:
    """Distinct cyclic windows of the digit period, via a rolling code."""
    size = _window_budget(spec.g, k, budget)
    if period is None:
        period = expand(spec)
    if k == 0:
        return _empty_window(spec, period.t)
    seen = kernels.sliding_seen(period.digits, k, spec.g, size)
    return CoverageReport(spec, k, period.t, seen)


def coverage_orbit(
    spec: FractionSpec,
    k: int,
    budget: int = DEFAULT_CODE_BUDGET,
    t: int | None = None,
) -> CoverageReport:
    """Distinct windows read off the orbit ``a -> g*a mod p`` as ``floor(g^k a / p)``.

    The window starting at position ``l + 1`` is determined by which of the
    ``g^k`` equal subintervals of ``[0, 1)`` contains ``{m g^l / p}``.
    """
    p = spec.n
    if not is_prime(p):
        raise ValidationError(f"coverage_orbit needs a prime denominator, got {p}")
    size = _window_budget(spec.g, k, budget)
    _check_kernel_range(spec)
    if t is None:
        t = multiplicative_order(spec.g, p)
    if k == 0:
        return _empty_window(spec, t)
    if size * p >= 1 << 63:
        raise BudgetError(f"g^k * p = {size * p} overflows 64-bit codes")
    seen = kernels.orbit_seen(spec.m, spec.g % p, p, t, size)
    return CoverageReport(spec, k, t, seen)


def coset_representatives(p: int, g: int, limit: int | None = None, t: int | None = None) -> list[int]:
    """Minimum element of each coset of ``<g>`` in the units mod ``p``, ascending.

    With ``limit`` only the ``limit`` smallest representatives are returned.
    """
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if g % p == 0:
        raise ValidationError(f"{p} divides the base {g}")
    kernels.check_kernel_modulus(p)
    if t is None:
        t = multiplicative_order(g, p)
    index = (p - 1) // t
    want = index if limit is None else min(limit, index)
    reps = kernels.coset_reps(p, g % p, t, want)
    return [int(r) for r in reps]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # decimal text of the float, so 0.01 means 1/100
        return Fraction(repr(x))
    return Fraction(x)


def threshold_k(p: int, g: int, c, eps=0) -> int:
    """Largest ``k >= 0`` with ``k <= (c - eps) * log_g p``.

    ``c`` and ``eps`` may be ints, floats, strings or Fractions.  When the
    floating-point value lies within 1e-9 of an integer the answer is
    settled by the exact comparison ``g^(k*b) <= p^a`` for ``c - eps = a/b``.
    """
    c = _as_fraction(c)
    eps = _as_fraction(eps)
    if not 0 < c <= 1:
        raise ValidationError(f"coefficient must lie in (0, 1], got {c}")
    if not 0 <= eps <= c:
        raise ValidationError(f"eps must lie in [0, c], got {eps}")
    if p < 2 or g < 2:
        raise ValidationError("need p >= 2 and g >= 2")
    q = c - eps
    if q == 0:
        return 0
    x = float(q) * math.log(p) / math.log(g)
    k = math.floor(x)
    nearest = round(x)
    if abs(x - nearest) < 1e-9:
        a, b = q.numerator, q.denominator
        k = nearest if g ** (nearest * b) <= p**a else nearest - 1
    return max(k, 0)
