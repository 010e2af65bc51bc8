"""Hot integer kernels, each in a numba variant and a pure-numpy variant.

The module-level names (``orbit``, ``cyclic_digits`` ...) dispatch to one of the
two variants according to :data:`digitpatterns._accel.USE_NUMBA`.  Both variants
are always importable through :data:`BACKENDS` so tests can cross-check them.

All kernels work on ``int64`` arrays and assume moduli below ``2**31`` so that
a product of two residues never leaves the signed 64-bit range.  Callers check
that with :func:`check_kernel_modulus`.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit
from .errors import BudgetError

KERNEL_MODULUS_LIMIT = 1 << 31


def check_kernel_modulus(n: int) -> None:
    if n >= KERNEL_MODULUS_LIMIT:
        raise BudgetError(f"modulus {n} exceeds the kernel limit 2**31")


# --------------------------------------------------------------------------
# numba variants

@njit
def _sieve_segment_nb(lo, hi, base_primes):
    seg = np.ones(hi - lo + 1, dtype=np.bool_)
    for q in base_primes:
        start = q * q
        if start > hi:
            break
        if start < lo:
            start = ((lo + q - 1) // q) * q
        for j in range(start - lo, hi - lo + 1, q):
            seg[j] = False
    return seg


@njit
def _orbit_nb(start, mult, n, length):
    out = np.empty(length, dtype=np.int64)
    a = start
    for i in range(length):
        out[i] = a
        a = (mult * a) % n
    return out


@njit
def _cyclic_digits_nb(m, n, g, t):
    digits = np.empty(t, dtype=np.int64)
    a = m
    for r in range(t):
        x = g * a
        digits[r] = x // n
        a = x % n
    return digits, a


@njit
def _sliding_seen_nb(digits, k, g, size):
    seen = np.zeros(size, dtype=np.bool_)
    t = digits.shape[0]
    top = size // g
    code = 0
    for i in range(k):
        code = code * g + digits[i % t]
    for r in range(t):
        seen[code] = True
        code = (code % top) * g + digits[(r + k) % t]
    return seen


@njit
def _orbit_seen_nb(m, g_mod, p, t, gk):
    seen = np.zeros(gk, dtype=np.bool_)
    a = m
    for _ in range(t):
        seen[(gk * a) // p] = True
        a = (g_mod * a) % p
    return seen


@njit
def _coset_reps_nb(p, g_mod, t, limit):
    visited = np.zeros(p, dtype=np.bool_)
    reps = np.empty(min(limit, p - 1), dtype=np.int64)
    count = 0
    for m in range(1, p):
        if visited[m]:
            continue
        reps[count] = m
        count += 1
        a = m
        while not visited[a]:
            visited[a] = True
            a = (g_mod * a) % p
        if count == limit:
            break
    return reps[:count]


@njit
def _avoid_naive_nb(elements, p, H):
    covered = np.zeros(p, dtype=np.bool_)
    for v in elements:
        for x in range(H):
            covered[(v - x) % p] = True
    free = 0
    for u in range(p):
        if not covered[u]:
            free += 1
    return free


@njit
def _count_n_pairs_nb(member, p, xs, inverses):
    total = 0
    for i in range(xs.shape[0]):
        xinv = inverses[i]
        for y in xs:
            if member[((y % p) * xinv) % p]:
                total += 1
    return total


@njit
def _count_n_orbit_nb(elements, p, xs, h):
    total = 0
    for u in elements:
        for x in xs:
            y = (u * (x % p)) % p
            if y <= h or y >= p - h:
                total += 1
    return total


@njit
def _scatter_products_nb(elements, p, xs):
    counts = np.zeros(p, dtype=np.int64)
    for a in xs:
        am = a % p
        for w in elements:
            counts[(am * w) % p] += 1
    return counts


@njit
def _correlate_nb(conv, elements, p):
    q = np.zeros(p, dtype=np.int64)
    for v in elements:
        for j in range(conv.shape[0]):
            c = conv[j]
            if c != 0:
                q[(v - j) % p] += c
    return q


# --------------------------------------------------------------------------
# numpy variants

def _sieve_segment_np(lo, hi, base_primes):
    seg = np.ones(hi - lo + 1, dtype=np.bool_)
    for q in base_primes.tolist():
        start = q * q
        if start > hi:
            break
        if start < lo:
            start = ((lo + q - 1) // q) * q
        seg[start - lo::q] = False
    return seg


def _orbit_np(start, mult, n, length):
    # doubling: block [L, 2L) is block [0, L) times mult**L
    out = np.empty(length, dtype=np.int64)
    if length == 0:
        return out
    out[0] = start % n
    filled = 1
    step = mult % n
    while filled < length:
        take = min(filled, length - filled)
        out[filled:filled + take] = (out[:take] * step) % n
        filled += take
        step = (step * step) % n
    return out


def _cyclic_digits_np(m, n, g, t):
    rem = _orbit_np(m, g % n, n, t + 1)
    digits = (g * rem[:t]) // n
    return digits, int(rem[t])


def _sliding_seen_np(digits, k, g, size):
    t = digits.shape[0]
    idx = np.arange(t)
    codes = np.zeros(t, dtype=np.int64)
    for i in range(k):
        codes = codes * g + digits[(idx + i) % t]
    seen = np.zeros(size, dtype=np.bool_)
    seen[codes] = True
    return seen


def _orbit_seen_np(m, g_mod, p, t, gk):
    orb = _orbit_np(m, g_mod, p, t)
    seen = np.zeros(gk, dtype=np.bool_)
    seen[(gk * orb) // p] = True
    return seen


def _coset_reps_np(p, g_mod, t, limit):
    base = _orbit_np(1, g_mod, p, t)
    visited = np.zeros(p, dtype=np.bool_)
    visited[0] = True
    reps = []
    start = 1
    while start < p and len(reps) < limit:
        m = start + int(np.argmin(visited[start:]))
        if visited[m]:
            break
        reps.append(m)
        visited[(m * base) % p] = True
        start = m + 1
    return np.asarray(reps, dtype=np.int64)


def _avoid_naive_np(elements, p, H):
    covered = np.zeros(p, dtype=np.bool_)
    for x in range(H):
        covered[(elements - x) % p] = True
    return int(p - np.count_nonzero(covered))


def _count_n_pairs_np(member, p, xs, inverses):
    ys = xs % p
    total = 0
    for xinv in inverses.tolist():
        total += int(np.count_nonzero(member[(ys * xinv) % p]))
    return total


def _count_n_orbit_np(elements, p, xs, h):
    total = 0
    for x in xs.tolist():
        y = (elements * (x % p)) % p
        total += int(np.count_nonzero((y <= h) | (y >= p - h)))
    return total


def _scatter_products_np(elements, p, xs):
    counts = np.zeros(p, dtype=np.int64)
    for a in xs.tolist():
        counts += np.bincount((elements * (a % p)) % p, minlength=p)
    return counts


def _correlate_np(conv, elements, p):
    q = np.zeros(p, dtype=np.int64)
    support = np.flatnonzero(conv)
    if support.size <= elements.size:
        # Q[u] = sum_j conv[j] * [u + j in G]
        indicator = np.zeros(p, dtype=np.int64)
        indicator[elements] = 1
        for j in support.tolist():
            q += conv[j] * np.roll(indicator, -j)
    else:
        js = support
        weights = conv[support]
        for v in elements.tolist():
            q[(v - js) % p] += weights
    return q


# --------------------------------------------------------------------------

_NAMES = (
    "sieve_segment",
    "orbit",
    "cyclic_digits",
    "sliding_seen",
    "orbit_seen",
    "coset_reps",
    "avoid_naive",
    "count_n_pairs",
    "count_n_orbit",
    "scatter_products",
    "correlate",
)

BACKENDS = {
    "numba": {name: globals()[f"_{name}_nb"] for name in _NAMES},
    "numpy": {name: globals()[f"_{name}_np"] for name in _NAMES},
}

_active = BACKENDS["numba" if USE_NUMBA else "numpy"]

sieve_segment = _active["sieve_segment"]
orbit = _active["orbit"]
cyclic_digits = _active["cyclic_digits"]
sliding_seen = _active["sliding_seen"]
orbit_seen = _active["orbit_seen"]
coset_reps = _active["coset_reps"]
avoid_naive = _active["avoid_naive"]
count_n_pairs = _active["count_n_pairs"]
count_n_orbit = _active["count_n_orbit"]
scatter_products = _active["scatter_products"]
correlate = _active["correlate"]
