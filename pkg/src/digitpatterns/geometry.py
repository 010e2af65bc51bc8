"""A coset of the subgroup generated by g, viewed as a point set on Z/pZ.

Counts provided here:

* ``#U(H)``: residues ``u`` whose window ``[u, u+H)`` misses the coset,
* ``N(h)``: solutions of ``u x = y`` with ``u`` in the subgroup and
  ``0 < |x|, |y| <= h``,
* ``M_lambda(h)``: representations ``lambda = a w`` with ``1 <= |a| <= h``,
* ``Q_s(Z, u)``: representations ``v = u + x_1 + ... + x_s`` with ``v`` in the
  coset and ``0 <= x_i < Z``, and ``W_s``, the residues with none.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .arith import is_prime, multiplicative_order
from .errors import BudgetError, ValidationError

NAIVE_AVOID_LIMIT = 10**5
SCATTER_LIMIT = 10**8
QS_MODULUS_LIMIT = 10**6
QS_WORK_LIMIT = 10**9


@dataclass(frozen=True)
class SubgroupTable:
    p: int
    g: int
    t: int
    coset_rep: int
    elements: np.ndarray = field(repr=False)

    @property
    def index(self) -> int:
        return (self.p - 1) // self.t

    def membership_mask(self) -> np.ndarray:
        mask = np.zeros(self.p, dtype=np.bool_)
        mask[self.elements] = True
        return mask


@dataclass(frozen=True)
class GapProfile:
    gaps: np.ndarray

    @property
    def max_gap(self) -> int:
        return int(self.gaps.max())


@dataclass(frozen=True)
class MSpectrum:
    counts: np.ndarray = field(repr=False)
    total: int
    sum_squares: int


@dataclass(frozen=True)
class AvoidanceBound:
    """The two addends of the interval-avoidance bound, with ``p^o(1)`` set to 1."""

    first: float
    second: float

    @property
    def total(self) -> float:
        return self.first + self.second


def build_subgroup(p: int, g: int, coset_rep: int = 1, t: int | None = None) -> SubgroupTable:
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if g % p == 0:
        raise ValidationError(f"{p} divides the base {g}")
    if coset_rep % p == 0:
        raise ValidationError("coset representative must be nonzero mod p")
    kernels.check_kernel_modulus(p)
    if t is None:
        t = multiplicative_order(g, p)
    elements = np.sort(kernels.orbit(coset_rep % p, g % p, p, t))
    return SubgroupTable(p, g, t, coset_rep % p, elements)


def is_member(u: int, p: int, t: int) -> bool:
    """True iff ``u`` lies in the unique subgroup of order ``t``."""
    if u % p == 0:
        raise ValidationError("0 is not a unit")
    if (p - 1) % t:
        raise ValidationError(f"{t} does not divide p - 1")
    return pow(u, t, p) == 1


def gap_profile(table: SubgroupTable) -> GapProfile:
    el = table.elements
    gaps = np.empty(el.shape[0], dtype=np.int64)
    gaps[:-1] = np.diff(el)
    gaps[-1] = el[0] + table.p - el[-1]
    return GapProfile(gaps)


def _check_H(table: SubgroupTable, H: int) -> None:
    if not 1 <= H < table.p:
        raise ValidationError(f"interval length H={H} must satisfy 1 <= H < p={table.p}")


def count_avoiding(table: SubgroupTable, H: int, gaps: GapProfile | None = None) -> int:
    """``#U(H)`` from the gap profile.

    A gap of length ``d`` between consecutive points ``v < v'`` holds exactly
    ``max(0, d - H)`` starting points ``u`` with ``[u, u+H)`` inside ``(v, v')``.
    """
    _check_H(table, H)
    if gaps is None:
        gaps = gap_profile(table)
    return int(np.maximum(gaps.gaps - H, 0).sum())


def avoiding_set(table: SubgroupTable, H: int) -> np.ndarray:
    """The residues ``u`` counted by :func:`count_avoiding`, ascending."""
    _check_H(table, H)
    gaps = gap_profile(table).gaps
    parts = [
        (v + np.arange(1, d - H + 1)) % table.p
        for v, d in zip(table.elements.tolist(), gaps.tolist())
        if d > H
    ]
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(parts))


def count_avoiding_naive(table: SubgroupTable, H: int) -> int:
    """``#U(H)`` by marking every ``u`` covered by some point ``v`` (``v - H < u <= v``)."""
    _check_H(table, H)
    if table.p > NAIVE_AVOID_LIMIT:
        raise BudgetError(f"naive scan is limited to p <= {NAIVE_AVOID_LIMIT}")
    return int(kernels.avoid_naive(table.elements, table.p, H))


def _check_h(p: int, h: int) -> None:
    if not 1 <= h or 2 * h >= p:
        raise ValidationError(f"h={h} must satisfy 1 <= h < p/2 (p={p})")


def _signed_range(h: int) -> np.ndarray:
    return np.concatenate([np.arange(-h, 0), np.arange(1, h + 1)]).astype(np.int64)


def count_N_pairs(table: SubgroupTable, h: int) -> int:
    """``N(h)`` by testing ``y * x^-1`` for membership over all ``(x, y)`` pairs."""
    p = table.p
    _check_h(p, h)
    xs = _signed_range(h)
    inverses = np.array([pow(int(x) % p, -1, p) for x in xs], dtype=np.int64)
    return int(kernels.count_n_pairs(table.membership_mask(), p, xs, inverses))


def count_N_orbit(table: SubgroupTable, h: int) -> int:
    """``N(h)`` by checking whether ``u * x`` lands in ``[-h, h]`` for each ``u`` and ``x``."""
    p = table.p
    _check_h(p, h)
    return int(kernels.count_n_orbit(table.elements, p, _signed_range(h), h))


def count_N(table: SubgroupTable, h: int) -> int:
    if table.coset_rep != 1:
        raise ValidationError("N(h) is defined for the subgroup itself (coset_rep = 1)")
    # (2h)^2 membership lookups against t * 2h products
    if 2 * h <= table.t:
        return count_N_pairs(table, h)
    return count_N_orbit(table, h)


def m_spectrum(table: SubgroupTable, h: int) -> MSpectrum:
    p = table.p
    _check_h(p, h)
    if 2 * h * table.t > SCATTER_LIMIT:
        raise BudgetError(f"2*h*t = {2 * h * table.t} products exceeds {SCATTER_LIMIT}")
    counts = kernels.scatter_products(table.elements, p, _signed_range(h))
    total = int(counts.sum())
    sum_squares = int(np.dot(counts, counts))
    return MSpectrum(counts, total, sum_squares)


def block_convolution(Z: int, s: int) -> np.ndarray:
    """Number of ways to write ``j`` as ``x_1 + ... + x_s`` with ``0 <= x_i < Z``.

    Each fold is a length-``Z`` moving sum computed from prefix sums.  The
    result has length ``s*(Z-1) + 1``.
    """
    if s < 1 or Z < 1:
        raise ValidationError(f"need s >= 1 and Z >= 1, got s={s}, Z={Z}")
    if s * math.log2(Z) >= 62:
        raise BudgetError(f"Z^s = {Z}^{s} overflows 64-bit counts")
    conv = np.ones(Z, dtype=np.int64)
    for _ in range(s - 1):
        csum = np.concatenate([[0], np.cumsum(conv)])
        n = conv.shape[0] + Z - 1
        j = np.arange(n)
        conv = csum[np.minimum(j + 1, conv.shape[0])] - csum[np.maximum(j - Z + 1, 0)]
    return conv


def count_Q_s(table: SubgroupTable, Z: int, s: int) -> np.ndarray:
    """``Q_s(Z, u)`` for every ``u`` in ``[0, p)``."""
    p = table.p
    if s < 1 or Z < 1:
        raise ValidationError(f"need s >= 1 and Z >= 1, got s={s}, Z={Z}")
    if s * (Z - 1) >= p:
        raise ValidationError(f"s*(Z-1) = {s * (Z - 1)} must be below p = {p}")
    if p > QS_MODULUS_LIMIT:
        raise BudgetError(f"Q_s is limited to p <= {QS_MODULUS_LIMIT}")
    if math.log2(table.t) + s * math.log2(Z) >= 62:
        raise BudgetError("t * Z^s overflows 64-bit counts")
    conv = block_convolution(Z, s)
    if table.t * conv.shape[0] > QS_WORK_LIMIT:
        raise BudgetError("Q_s correlation exceeds the work budget")
    return kernels.correlate(conv, table.elements, p)


def w_s_size(table: SubgroupTable, Z: int, s: int, q: np.ndarray | None = None) -> int:
    if q is None:
        q = count_Q_s(table, Z, s)
    return int(np.count_nonzero(q == 0))


def avoidance_bound_exponents(nu: int) -> tuple[tuple[Fraction, Fraction, Fraction], tuple[Fraction, Fraction, Fraction]]:
    """Exponents of ``(p, H, t)`` in the two addends of the avoidance bound."""
    if nu < 1:
        raise ValidationError(f"nu must be a positive integer, got {nu}")
    nu = Fraction(nu)
    first = (
        2 - 1 / (4 * (nu + 1)),
        Fraction(-1, 2),
        Fraction(-5, 4) + (2 * nu + 1) / (4 * nu * (nu + 1)),
    )
    second = (
        Fraction(5, 2) - 1 / (2 * nu),
        Fraction(-1),
        Fraction(-5, 4) + 1 / (2 * nu),
    )
    return first, second


def avoidance_bound(p: int, t: int, H: int, nu: int, warn: bool = True) -> AvoidanceBound:
    """Evaluate the avoidance bound for diagnostics only; implied constants are unknown."""
    if warn and t * t <= p:
        warnings.warn(f"t={t} does not exceed sqrt(p) for p={p}; bound not applicable", stacklevel=2)
    first, second = avoidance_bound_exponents(nu)
    lp, lH, lt = math.log(p), math.log(H), math.log(t)

    def term(ex):
        return math.exp(float(ex[0]) * lp + float(ex[1]) * lH + float(ex[2]) * lt)

    return AvoidanceBound(term(first), term(second))


def nontrivial_H_exponent(nu: int) -> Fraction:
    """Smallest ``theta`` such that ``H = p^theta`` makes both addends at most ``p``
    when ``t = p^(1/2)``."""
    need = []
    for ep, eH, et in avoidance_bound_exponents(nu):
        # p^(ep + et/2) * H^eH <= p  <=>  theta >= (ep + et/2 - 1) / (-eH)
        need.append((ep + et / 2 - 1) / (-eH))
    return max(need)


def nontrivial_H_min(p: int, eps: float) -> int:
    return math.ceil(p ** (19 / 24 + eps))
