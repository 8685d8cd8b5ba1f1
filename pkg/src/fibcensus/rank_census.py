"""Counting Fibonacci numbers in half-open intervals.

``rank(x).h`` is the number of distinct Fibonacci values in ``[1, x)``; with
the duplicate ``F(1) == F(2) == 1`` counted once, those values are
``F(2), ..., F(h+1)`` and ``F(h+1) < x <= F(h+2)``. Interval counts are rank
differences, and the census of ``[a^k, a^(k+1))`` is either computed per k
(random access) or by a single forward pass over consecutive k.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .fib_kernel import FibPair, fib_pair
from .golden_exact import Ordering, cmp_int_phi_pow

__all__ = [
    "Rank",
    "CensusRecord",
    "TheoremReport",
    "rank",
    "count_interval",
    "ell",
    "census",
    "census_stream",
    "census_counts",
    "verify_theorem",
]

_LOG_PHI = math.log((1 + math.sqrt(5)) / 2)
_LOG_SQRT5 = 0.5 * math.log(5)


@dataclass(frozen=True)
class Rank:
    x: int
    h: int
    witness_index: int


@dataclass(frozen=True)
class CensusRecord:
    a: int
    k: int
    count: int


@dataclass
class TheoremReport:
    a: int
    K: int
    ell: int
    violations: list[CensusRecord] = field(default_factory=list)
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return not self.violations


def _check_base(a: int) -> None:
    if not isinstance(a, int) or a < 2:
        raise ValueError(f"base must be an integer >= 2, got {a!r}")


def _first_fib_at_least(x: int) -> FibPair:
    """Pair at the least index j >= 2 with F(j) >= x (for x >= 1)."""
    if x <= 2:
        return fib_pair(2 if x <= 1 else 3)
    # Binet: F(n) ~ phi^n / sqrt 5; a guess only, fixed up exactly below
    guess = max(3, int(round((math.log(x) + _LOG_SQRT5) / _LOG_PHI)))
    pair = fib_pair(guess)
    while pair.lo < x:
        pair = pair.advance()
    while pair.n > 3 and pair.retreat().lo >= x:
        pair = pair.retreat()
    return pair


def rank(x: int) -> Rank:
    if x < 1:
        raise ValueError(f"rank is defined for x >= 1, got {x}")
    if x == 1:
        return Rank(1, 0, 2)
    pair = _first_fib_at_least(x)
    return Rank(x, pair.n - 2, pair.n)


def count_interval(lo: int, hi: int) -> int:
    if lo < 1:
        raise ValueError(f"lower bound must be >= 1, got {lo}")
    if hi < lo:
        raise ValueError(f"upper bound {hi} is below lower bound {lo}")
    return rank(hi).h - rank(lo).h


def ell(a: int) -> int:
    """The unique l with phi^l <= a < phi^(l+1), by exact comparison only."""
    _check_base(a)
    hi = 2
    while cmp_int_phi_pow(a, hi) is not Ordering.LESS:
        hi *= 2
    lo = hi // 2  # phi^lo <= a < phi^hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if cmp_int_phi_pow(a, mid) is Ordering.LESS:
            hi = mid
        else:
            lo = mid
    return lo


def census(a: int, k: int) -> CensusRecord:
    _check_base(a)
    if k < 0:
        raise ValueError(f"exponent must be nonnegative, got {k}")
    lo = a**k
    return CensusRecord(a, k, count_interval(lo, lo * a))


def census_stream(a: int, K: int, start: int = 0) -> Iterator[CensusRecord]:
    """Census records for k = start .. start+K-1 in one forward pass.

    The Fibonacci pair is advanced by addition and the boundary by one
    multiplication by ``a`` per interval; the pass is seeded with
    :func:`rank` at ``a**start``, so disjoint chunks can run independently.
    """
    _check_base(a)
    if K < 1:
        raise ValueError(f"number of intervals must be >= 1, got {K}")
    if start < 0:
        raise ValueError(f"start exponent must be nonnegative, got {start}")
    boundary = a**start
    cur, nxt = _first_fib_at_least(boundary)[1:]
    for k in range(start, start + K):
        boundary *= a
        count = 0
        while cur < boundary:
            count += 1
            cur, nxt = nxt, cur + nxt
        yield CensusRecord(a, k, count)


def _chunk_counts(args: tuple[int, int, int]) -> list[int]:
    a, K, start = args
    return [rec.count for rec in census_stream(a, K, start)]


def census_counts(a: int, K: int, workers: int = 1) -> list[int]:
    """Counts for k = 0..K-1, optionally split over worker processes."""
    _check_base(a)
    if K < 1:
        raise ValueError(f"number of intervals must be >= 1, got {K}")
    if workers <= 1 or K < 2 * workers:
        return _chunk_counts((a, K, 0))
    # later intervals carry more digits, so give them smaller chunks
    weights = [math.sqrt(i + 1) - math.sqrt(i) for i in range(workers)]
    total = sum(weights)
    bounds = [0]
    for w in weights[:-1]:
        bounds.append(min(K, bounds[-1] + max(1, round(K * w / total))))
    bounds.append(K)
    jobs = [(a, e - s, s) for s, e in zip(bounds, bounds[1:]) if e > s]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_chunk_counts, jobs))
    return [c for part in parts for c in part]


def verify_theorem(a: int, K: int, workers: int = 1) -> TheoremReport:
    l = ell(a)
    counts = census_counts(a, K, workers)
    report = TheoremReport(a=a, K=K, ell=l)
    report.histogram = dict(sorted(Counter(counts).items()))
    report.violations = [
        CensusRecord(a, k, c) for k, c in enumerate(counts) if c not in (l, l + 1)
    ]
    return report
