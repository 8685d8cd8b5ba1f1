"""Exact census of Fibonacci numbers in the intervals [a^k, a^(k+1))."""

from .density_stats import (
    DensityReport,
    PrecisionCapExceeded,
    StatsReport,
    ThetaApprox,
    density_report,
    empirical_stats,
    expected_stats,
    theta_approx,
)
from .fib_kernel import FibPair, fib, fib_iter_oracle, fib_pair, lucas
from .golden_exact import (
    GoldenInt,
    Ordering,
    cmp_int_phi_pow,
    conj_pow,
    floor_ceil_phi_pow,
    golden_arith,
    golden_sign,
    phi_pow,
)
from .rank_census import (
    CensusRecord,
    Rank,
    TheoremReport,
    census,
    census_counts,
    census_stream,
    count_interval,
    ell,
    rank,
    verify_theorem,
)

__version__ = "0.1.0"
