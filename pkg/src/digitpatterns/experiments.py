"""Report builders behind the command-line interface.

Every builder returns a plain dict with ``schema``, ``params``, ``results``
and ``summary`` keys.  Numbers are taken straight from the library calls;
the only post-processing is rounding floats to 12 significant digits.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import geometry as geo
from .arith import is_prime, multiplicative_order, primes_in_range
from .errors import InvariantError, ValidationError
from .expansion import (
    DEFAULT_CODE_BUDGET,
    FractionSpec,
    coset_representatives,
    coverage_orbit,
    coverage_sliding,
    expand,
    threshold_k,
)
from .expsums import moments, spectrum_fft, spectrum_naive

SCHEMA_VERSION = "v1"
DEFAULT_COSET_SAMPLE = 16


def schema(name: str) -> str:
    return f"digitpatterns.{name}/{SCHEMA_VERSION}"


def fmt_float(x: float | None) -> float | None:
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _report(name: str, params: dict, results, summary: dict) -> dict:
    return {"schema": schema(name), "params": params, "results": results, "summary": summary}


def parse_coefficient(text: str, allow_zero: bool = False) -> Fraction:
    """Exact rational from ``"5/24"``-style text (or an integer/decimal literal)."""
    try:
        c = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse coefficient {text!r}") from exc
    if not (0 <= c if allow_zero else 0 < c) or c > 1:
        raise ValidationError(f"coefficient out of range: {c}")
    return c


def _map(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _is_t_gt_sqrt(t: int, p: int) -> bool:
    return t * t > p


# --------------------------------------------------------------------------
# expand

def expand_report(m: int, n: int, g: int, k: int | None = None, show: int | None = 64,
                  budget: int = DEFAULT_CODE_BUDGET) -> dict:
    spec = FractionSpec(m, n, g)
    period = expand(spec)
    results = {
        "t": period.t,
        "digits": period.digit_string(show),
        "digits_truncated": show is not None and period.t > show,
    }
    summary = {"t": period.t}
    if k is not None:
        cov = coverage_sliding(spec, k, budget=budget, period=period)
        results["coverage"] = {"k": k, "T": cov.T, "g_k": cov.size, "full": cov.full}
        summary.update(T=cov.T, g_k=cov.size)
    return _report("expand", {"m": m, "n": n, "g": g, "k": k}, results, summary)


# --------------------------------------------------------------------------
# sweep

@dataclass(frozen=True)
class SweepRow:
    p: int
    g: int
    t: int
    t_gt_sqrtp: bool
    num_cosets: int
    cosets_checked: int
    k: int
    gk: int
    T_min: int
    T_max: int
    full: bool
    missing_max: int

    def check(self) -> None:
        if not self.T_min <= self.T_max <= min(self.t, self.gk):
            raise InvariantError(f"coverage bounds violated for p={self.p}: {self}")
        if self.full != (self.T_min == self.gk) or (self.full and self.missing_max != 0):
            raise InvariantError(f"inconsistent full flag for p={self.p}")


SWEEP_FIELDS = list(SweepRow.__dataclass_fields__)


def sweep_row(p: int, g: int, c: Fraction, eps, coset_limit: int | None,
              budget: int = DEFAULT_CODE_BUDGET) -> SweepRow:
    t = multiplicative_order(g, p)
    k = threshold_k(p, g, c, eps)
    gk = g**k
    reps = coset_representatives(p, g, limit=coset_limit, t=t)
    Ts = [coverage_orbit(FractionSpec(m, p, g), k, budget=budget, t=t).T for m in reps]
    row = SweepRow(
        p=p, g=g, t=t, t_gt_sqrtp=_is_t_gt_sqrt(t, p), num_cosets=(p - 1) // t,
        cosets_checked=len(reps), k=k, gk=gk, T_min=min(Ts), T_max=max(Ts),
        full=min(Ts) == gk, missing_max=gk - min(Ts),
    )
    row.check()
    return row


def sweep(A: int, B: int, g: int, c: Fraction, eps=0, coset_sample: int | None = DEFAULT_COSET_SAMPLE,
          threads: int = 1, budget: int = DEFAULT_CODE_BUDGET) -> dict:
    """One row per prime ``p`` in ``[A, B]`` not dividing ``g``.

    ``coset_sample=None`` checks every coset; otherwise the ``coset_sample``
    smallest coset representatives are used.
    """
    if g < 2:
        raise ValidationError("base must be at least 2")
    if coset_sample is not None and coset_sample < 1:
        raise ValidationError("coset sample must be positive")
    primes = [p for p in primes_in_range(max(A, 2), B) if g % p]
    rows = _map(lambda p: sweep_row(p, g, c, eps, coset_sample, budget), primes, threads)
    rows.sort(key=lambda r: r.p)
    big = [r for r in rows if r.t_gt_sqrtp]
    summary = {
        "primes": len(rows),
        "frac_t_gt_sqrtp": fmt_float(len(big) / len(rows)) if rows else None,
        "frac_full": fmt_float(sum(r.full for r in rows) / len(rows)) if rows else None,
        "frac_full_given_t_gt_sqrtp": fmt_float(sum(r.full for r in big) / len(big)) if big else None,
        "mean_missing_fraction": fmt_float(statistics.fmean(r.missing_max / r.gk for r in rows)) if rows else None,
    }
    params = {
        "A": A, "B": B, "g": g, "c": str(c), "eps": str(eps),
        "cosets": "all" if coset_sample is None else coset_sample,
    }
    return _report("sweep", params, [asdict(r) for r in rows], summary)


# --------------------------------------------------------------------------
# order census

def order_census(x: int, g: int, threads: int = 1) -> dict:
    if x < 2:
        raise ValidationError("x must be at least 2")
    primes = [p for p in primes_in_range(2, x) if g % p]
    orders = _map(lambda p: multiplicative_order(g, p), primes, threads)
    rows = []
    hist: dict[int, int] = {}
    above = 0
    for p, t in zip(primes, orders):
        big = _is_t_gt_sqrt(t, p)
        above += big
        idx = (p - 1) // t
        hist[idx] = hist.get(idx, 0) + 1
        rows.append({"p": p, "t": t, "index": idx, "t_gt_sqrtp": big})
    n = len(primes)
    summary = {
        "primes": n,
        "t_gt_sqrtp": above,
        "t_le_sqrtp": n - above,
        "fraction": fmt_float(above / n) if n else None,
        "index_histogram": {str(i): hist[i] for i in sorted(hist)},
    }
    return _report("order-census", {"x": x, "g": g}, rows, summary)


# --------------------------------------------------------------------------
# interval avoidance

def _require_prime(p: int, g: int) -> None:
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if g % p == 0:
        raise ValidationError(f"{p} divides the base {g}")


def avoid_report(p: int, g: int, H: int | None = None, nontrivial_eps: float | None = None,
                 coset: int = 1, nus=(1, 2, 3)) -> dict:
    _require_prime(p, g)
    if (H is None) == (nontrivial_eps is None):
        raise ValidationError("give exactly one of H or --nontrivial-eps")
    eps = 0.0 if nontrivial_eps is None else nontrivial_eps
    H_min = geo.nontrivial_H_min(p, eps)
    if H is None:
        H = H_min
    table = geo.build_subgroup(p, g, coset)
    u = geo.count_avoiding(table, H)
    if u > p - table.t:
        raise InvariantError(f"#U={u} exceeds p - t")
    bounds = []
    for nu in nus:
        terms = geo.avoidance_bound(p, table.t, H, nu, warn=False)
        bounds.append({
            "nu": nu,
            "rhs_first": fmt_float(terms.first),
            "rhs_second": fmt_float(terms.second),
            "rhs": fmt_float(terms.total),
            "ratio": fmt_float(u / terms.total),
        })
    results = {
        "p": p, "t": table.t, "H": H, "coset": table.coset_rep, "u_count": u,
        "u_fraction": fmt_float(u / p), "nontrivial_H_min": H_min, "bounds": bounds,
    }
    summary = {"u_count": u, "u_fraction": fmt_float(u / p), "t_gt_sqrtp": _is_t_gt_sqrt(table.t, p)}
    params = {"p": p, "g": g, "H": H, "nontrivial_eps": nontrivial_eps, "coset": coset}
    return _report("avoid", params, results, summary)


def guaranteed_avoiders(p: int, gk: int, missing: np.ndarray) -> int:
    """Residues ``u`` forced into ``U`` by the missing window codes.

    A missing code ``D`` leaves ``[Dp/g^k, (D+1)p/g^k)`` free of the coset,
    so every ``u`` from ``ceil(Dp/g^k)`` to ``floor((D+1/2)p/g^k)`` starts an
    avoiding interval of length ``floor(p/(2 g^k))``.
    """
    total = 0
    for D in missing.tolist():
        lo = -((-D * p) // gk)
        hi = ((2 * D + 1) * p) // (2 * gk)
        total += max(0, hi - lo + 1)
    return total


def missing_vs_avoid(p: int, g: int, k: int, coset_sample: int | None = None,
                     budget: int = DEFAULT_CODE_BUDGET) -> dict:
    _require_prime(p, g)
    if k < 1:
        raise ValidationError("k must be at least 1")
    gk = g**k
    H = p // (2 * gk)
    if H == 0:
        raise ValidationError(f"H = floor(p / (2 g^k)) = 0 for p={p}, g^k={gk}")
    t = multiplicative_order(g, p)
    reps = coset_representatives(p, g, limit=coset_sample, t=t)
    rows = []
    for m in reps:
        cov = coverage_orbit(FractionSpec(m, p, g), k, budget=budget, t=t)
        table = geo.build_subgroup(p, g, m, t=t)
        u = geo.count_avoiding(table, H)
        missing = gk - cov.T
        forced = guaranteed_avoiders(p, gk, cov.missing)
        ok = u >= forced and (missing == 0 or u >= H - 1)
        if not ok:
            raise InvariantError(f"coset {m}: {missing} missing strings but #U={u} < {forced}")
        rows.append({
            "coset": m,
            "T": cov.T,
            "missing": missing,
            "u_count": u,
            "forced_u": forced,
            "lhs_rhs_ratio": fmt_float(missing / (gk / p * u)) if u else None,
            "implication_ok": ok,
        })
    summary = {
        "H": H,
        "g_k": gk,
        "t": t,
        "cosets": len(rows),
        "max_missing": max(r["missing"] for r in rows),
        "max_u_count": max(r["u_count"] for r in rows),
        "all_implications_hold": all(r["implication_ok"] for r in rows),
    }
    return _report("missing-vs-avoid", {"p": p, "g": g, "k": k}, rows, summary)


# --------------------------------------------------------------------------
# exponential sums

def relative_gap(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``|a - b| / max(|b|, 1)`` elementwise."""
    return np.abs(a - b) / np.maximum(np.abs(b), 1.0)


def sample_lambdas(p: int, count: int, seed: int | None = None) -> list[int]:
    rng = np.random.default_rng(p if seed is None else seed)
    if count >= p - 1:
        return list(range(1, p))
    return sorted(int(x) for x in rng.choice(np.arange(1, p), size=count, replace=False))


def expsum_report(p: int, g: int, check: int = 64, coset: int = 1, seed: int | None = None) -> dict:
    _require_prime(p, g)
    table = geo.build_subgroup(p, g, coset)
    spec = spectrum_fft(table)
    mom = moments(spec)
    lams = sample_lambdas(p, check, seed)
    naive = spectrum_naive(table, lams)
    agreement = float(relative_gap(spec.power[lams], naive).max()) if lams else 0.0
    s0 = math.sqrt(spec.power[0])
    results = {
        "p": p, "t": table.t,
        "moment2": fmt_float(mom.moment2),
        "moment2_expected": p * table.t - table.t**2,
        "moment4": fmt_float(mom.moment4),
        "ratio4": fmt_float(mom.ratio4),
        "max_abs": fmt_float(mom.max_abs),
        "ratio_max": fmt_float(mom.ratio_max),
        "S0": fmt_float(s0),
        "parseval_residual": fmt_float(mom.parseval_residual),
        "checked_lambdas": len(lams),
        "fft_naive_max_rel": fmt_float(agreement),
    }
    problems = []
    if mom.parseval_residual > 1e-6:
        problems.append("Parseval")
    if abs(s0 - table.t) > 1e-9 * table.t:
        problems.append("S_0")
    if mom.ratio_max > 1 + 1e-6:
        problems.append("max |S| <= sqrt(p)")
    if agreement > 1e-8:
        problems.append("fft/naive agreement")
    if problems:
        raise InvariantError(f"spectrum self-checks failed: {', '.join(problems)}")
    summary = {"checks_passed": True, "ratio4": results["ratio4"], "ratio_max": results["ratio_max"]}
    return _report("expsum", {"p": p, "g": g, "check": check, "coset": coset}, results, summary)


# --------------------------------------------------------------------------
# s-fold congruences

def qs_report(p: int, g: int, H: int, s: int, coset: int = 1) -> dict:
    _require_prime(p, g)
    if s < 1:
        raise ValidationError("s must be at least 1")
    table = geo.build_subgroup(p, g, coset)
    Z = -(-H // s)
    q = geo.count_Q_s(table, Z, s)
    W = geo.w_s_size(table, Z, s, q=q)
    U = geo.avoiding_set(table, H)
    total = int(q.sum())
    if total != table.t * Z**s:
        raise InvariantError(f"sum of Q_s is {total}, expected t*Z^s = {table.t * Z**s}")
    if np.any(q[U] != 0):
        raise InvariantError("an avoiding residue has a representation")
    results = {
        "p": p, "t": table.t, "H": H, "s": s, "Z": Z,
        "u_count": int(U.size), "w_count": W,
        "q_total": total, "q_max": int(q.max()),
    }
    summary = {"inclusion_holds": True, "u_count": int(U.size), "w_count": W}
    return _report("qs", {"p": p, "g": g, "H": H, "s": s, "coset": coset}, results, summary)
