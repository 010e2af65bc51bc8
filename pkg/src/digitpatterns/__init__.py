"""Digit patterns of g-ary expansions of m/p and the subgroup geometry behind them."""

from ._accel import USE_NUMBA, backend_name
from .arith import (
    FactoredInteger,
    factorize,
    is_prime,
    mul_mod,
    multiplicative_order,
    pow_mod,
    primes_in_range,
)
from .errors import BudgetError, DigitPatternsError, InvariantError, ValidationError
from .expansion import (
    CoverageReport,
    ExpansionPeriod,
    FractionSpec,
    coset_representatives,
    coverage_orbit,
    coverage_sliding,
    expand,
    threshold_k,
)
from .expsums import SumSpectrum, moments, spectrum_fft, spectrum_naive
from .geometry import (
    GapProfile,
    SubgroupTable,
    build_subgroup,
    count_avoiding,
    count_avoiding_naive,
    count_N,
    count_Q_s,
    gap_profile,
    is_member,
    avoidance_bound,
    m_spectrum,
    w_s_size,
)

__version__ = "0.1.0"
