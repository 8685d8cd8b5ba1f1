"""Exhaustive range checks of the Fibonacci/Lucas identities and inequalities.

Each checker returns a :class:`CheckResult`; a failing result always carries
the first counterexample found, which can be re-checked by hand. The
arithmetic primitives are keyword arguments so that :func:`mutation_harness`
can substitute a deliberately broken one and confirm the checker notices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .density_stats import int_to_str, len_decimal, theta_enclosure
from .fib_kernel import fib as _fib, lucas as _lucas
from .golden_exact import GoldenInt, floor_ceil_phi_pow as _floor_ceil, phi_pow
from .rank_census import census_stream, ell, rank as _rank

__all__ = [
    "CheckResult",
    "check_phi_bounds",
    "check_doubling_ineq",
    "check_fib_lucas_identity",
    "check_key_lemma",
    "check_asymptotic_count",
    "check_addition_formula",
    "check_honsberger",
    "run_all",
    "mutation_harness",
    "DEFAULT_ASYMPTOTIC_XS",
]

IntFn = Callable[[int], int]

DEFAULT_ASYMPTOTIC_XS = tuple(10**e for e in (3, 6, 24, 60, 200))


@dataclass(frozen=True)
class CheckResult:
    name: str
    parameter_range: str
    passed: bool
    counterexample: tuple | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "range": self.parameter_range,
            "pass": self.passed,
            "counterexample": _jsonable(self.counterexample),
        }


def _jsonable(cx: tuple | None) -> list | None:
    if cx is None:
        return None
    # huge parameters travel as decimal strings (JSON readers choke on them)
    return [int_to_str(v) if isinstance(v, int) and abs(v) >= 10**18 else v for v in cx]


def _table(fn: IntFn, lo: int, hi: int) -> dict[int, int]:
    return {i: fn(i) for i in range(lo, hi + 1)}


def _grid(r: tuple[int, int]) -> range:
    return range(r[0], r[1] + 1)


def check_phi_bounds(n_max: int = 2000, *, fib: IntFn = _fib) -> CheckResult:
    """phi^(n-2) <= F(n) <= phi^(n-1); left strict for n >= 3, right strict for n >= 2."""
    name, rng = "phi_bounds", f"n=1..{n_max}"
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    for n in range(1, n_max + 1):
        f = GoldenInt(fib(n), 0)
        left = (f - phi_pow(n - 2)).sign()
        right = (phi_pow(n - 1) - f).sign()
        ok_left = left > 0 if n >= 3 else left >= 0
        ok_right = right > 0 if n >= 2 else right >= 0
        if not (ok_left and ok_right):
            return CheckResult(name, rng, False, (n,))
    return CheckResult(name, rng, True)


def check_doubling_ineq(n_range: tuple[int, int] = (-200, 200), *, fib: IntFn = _fib) -> CheckResult:
    """F(2n-1) >= F(n)^2, via the identity F(2n-1) = F(n)^2 + F(n-1)^2."""
    name, rng = "doubling_ineq", f"n={n_range[0]}..{n_range[1]}"
    lo, hi = n_range
    table = _table(fib, min(2 * lo - 1, lo - 1), max(2 * hi - 1, hi))
    for n in _grid(n_range):
        f2 = table[2 * n - 1]
        fn, fm = table[n], table[n - 1]
        if f2 != fn * fn + fm * fm or f2 < fn * fn:
            return CheckResult(name, rng, False, (n,))
    return CheckResult(name, rng, True)


def check_fib_lucas_identity(
    n_range: tuple[int, int] = (-200, 200),
    m_range: tuple[int, int] = (-200, 200),
    *,
    fib: IntFn = _fib,
    lucas: IntFn = _lucas,
) -> CheckResult:
    """F(n+m) = F(n) L(m) + (-1)^(m+1) F(n-m)."""
    name = "fib_lucas_identity"
    rng = f"n={n_range[0]}..{n_range[1]}, m={m_range[0]}..{m_range[1]}"
    span = abs(n_range[0]) + abs(n_range[1]) + abs(m_range[0]) + abs(m_range[1])
    ft = _table(fib, -span, span)
    lt = _table(lucas, m_range[0], m_range[1])
    for n in _grid(n_range):
        for m in _grid(m_range):
            sign = -1 if m % 2 == 0 else 1
            if ft[n + m] != ft[n] * lt[m] + sign * ft[n - m]:
                return CheckResult(name, rng, False, (n, m))
    return CheckResult(name, rng, True)


def check_key_lemma(
    n_max: int = 300,
    m_max: int = 300,
    *,
    fib: IntFn = _fib,
    floor_ceil: Callable[[int], tuple[int, int]] = _floor_ceil,
) -> CheckResult:
    """F(n) floor(phi^m) <= F(n+m) <= F(n) ceil(phi^m) for n >= m-1, (n, m) != (0, 1).

    The excluded pair (0, 1) must fail, showing that hypothesis is needed.
    """
    name, rng = "key_lemma", f"n=0..{n_max}, m=0..{m_max}, n>=m-1, (n,m)!=(0,1)"
    ft = _table(fib, 0, n_max + m_max)
    bounds = {m: floor_ceil(m) for m in range(m_max + 1)}
    for m in range(m_max + 1):
        fl, ce = bounds[m]
        for n in range(max(0, m - 1), n_max + 1):
            if (n, m) == (0, 1):
                continue
            if not ft[n] * fl <= ft[n + m] <= ft[n] * ce:
                return CheckResult(name, rng, False, (n, m))
    if m_max >= 1:
        fl, ce = bounds[1]
        if ft[0] * fl <= ft[1] <= ft[0] * ce:
            return CheckResult(name, rng, False, (0, 1), "excluded pair unexpectedly satisfies the bounds")
    return CheckResult(name, rng, True)


def check_asymptotic_count(
    x_values: Sequence[int] = DEFAULT_ASYMPTOTIC_XS,
    *,
    rank: Callable = _rank,
    threshold: float = 0.05,
    bits: int = 128,
) -> CheckResult:
    """rank(x) / (log x / log phi) -> 1: distances to 1 shrink along x_values
    and the last one is below ``threshold``.

    Each ratio is enclosed with certified logarithms; a step only counts as
    shrinking when the enclosures are disjoint in the right order.
    """
    xs = list(x_values)
    name, rng = "asymptotic_count", "x in [" + ", ".join(_short(x) for x in xs) + "]"
    if any(x < 2 for x in xs) or any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_values must be increasing and >= 2")
    prev_lo: Fraction | None = None
    dist_hi = Fraction(0)
    for x in xs:
        h = rank(x).h
        t_lo, t_hi = theta_enclosure(x, bits)
        r_lo, r_hi = Fraction(h) / t_hi, Fraction(h) / t_lo
        dist_lo = min(abs(r_lo - 1), abs(r_hi - 1)) if not r_lo <= 1 <= r_hi else Fraction(0)
        dist_hi = max(abs(r_lo - 1), abs(r_hi - 1))
        if prev_lo is not None and not dist_hi < prev_lo:
            return CheckResult(name, rng, False, (x,))
        prev_lo = dist_lo
    if not dist_hi < Fraction(threshold):
        return CheckResult(name, rng, False, (xs[-1],))
    return CheckResult(name, rng, True)


def _short(x: int) -> str:
    d = len_decimal(x)
    if d > 6 and x == 10 ** (d - 1):
        return f"10^{d - 1}"
    return int_to_str(x)


def check_addition_formula(
    n_range: tuple[int, int] = (-200, 200),
    m_range: tuple[int, int] = (-200, 200),
    *,
    fib: IntFn = _fib,
) -> CheckResult:
    """F(n+m) = F(n) F(m+1) + F(n-1) F(m)."""
    name = "addition_formula"
    rng = f"n={n_range[0]}..{n_range[1]}, m={m_range[0]}..{m_range[1]}"
    (n0, n1), (m0, m1) = n_range, m_range
    ft = _table(fib, min(n0 - 1, m0, n0 + m0), max(n1 + m1, m1 + 1, n1))
    for n in _grid(n_range):
        for m in _grid(m_range):
            if ft[n + m] != ft[n] * ft[m + 1] + ft[n - 1] * ft[m]:
                return CheckResult(name, rng, False, (n, m))
    return CheckResult(name, rng, True)


def check_honsberger(a_max: int = 100, k_max: int = 200, *, stream: Callable = census_stream) -> CheckResult:
    """Every interval [a^k, a^(k+1)) holds at most ell(a) + 1 <= a Fibonacci numbers."""
    name, rng = "honsberger", f"a=2..{a_max}, k=0..{k_max}"
    if a_max < 2:
        raise ValueError("a_max must be >= 2")
    for a in range(2, a_max + 1):
        cap = ell(a) + 1
        if cap > a:
            return CheckResult(name, rng, False, (a,), "ell(a) + 1 exceeds a")
        for rec in stream(a, k_max + 1):
            if rec.count > a or rec.count > cap:
                return CheckResult(name, rng, False, (a, rec.k))
    return CheckResult(name, rng, True)


def run_all(
    *,
    n_max: int = 2000,
    grid: int = 200,
    key_n_max: int = 300,
    key_m_max: int = 300,
    a_max: int = 100,
    k_max: int = 200,
    x_values: Sequence[int] = DEFAULT_ASYMPTOTIC_XS,
) -> list[CheckResult]:
    g = (-grid, grid)
    return [
        check_phi_bounds(n_max),
        check_doubling_ineq(g),
        check_fib_lucas_identity(g, g),
        check_key_lemma(key_n_max, key_m_max),
        check_asymptotic_count(x_values),
        check_addition_formula(g, g),
        check_honsberger(a_max, k_max),
    ]


# ---------------------------------------------------------------------------
# mutation harness
# ---------------------------------------------------------------------------


def _bump(fn: Callable, at: int, delta: int = 1) -> Callable:
    def broken(i):
        return fn(i) + delta if i == at else fn(i)

    return broken


def mutation_harness(seed: int = 0) -> list[tuple[str, CheckResult]]:
    """Run every checker against one injected fault and return the results.

    Fault positions are drawn from ``random.Random(seed)``; every returned
    result should have ``passed == False`` and a counterexample.
    """
    rng = random.Random(seed)
    results: list[tuple[str, CheckResult]] = []

    def record(label: str, res: CheckResult) -> None:
        results.append((label, res))

    i = rng.randint(2, 60)
    record(f"fib({i})*2", check_phi_bounds(80, fib=_bump(_fib, i, _fib(i))))

    i = rng.randint(-30, 30)
    record(f"fib({i})+1", check_doubling_ineq((-40, 40), fib=_bump(_fib, i)))

    i = rng.randint(-20, 20)
    record(f"lucas({i})+1", check_fib_lucas_identity((-25, 25), (-25, 25), lucas=_bump(_lucas, i)))

    m = rng.randint(2, 30)

    def lowered_ceil(mm: int) -> tuple[int, int]:
        fl, ce = _floor_ceil(mm)
        return (fl, ce - 1) if mm == m else (fl, ce)

    record(f"ceil(phi^{m})-1", check_key_lemma(40, 40, floor_ceil=lowered_ceil))

    # a fault at the first x cannot break a "shrinking distance" check
    j = rng.randrange(1, len(DEFAULT_ASYMPTOTIC_XS))
    target = DEFAULT_ASYMPTOTIC_XS[j]

    def inflated_rank(x: int):
        r = _rank(x)
        return type(r)(r.x, 2 * r.h, r.witness_index) if x == target else r

    record(f"rank(x_{j})*2", check_asymptotic_count(DEFAULT_ASYMPTOTIC_XS, rank=inflated_rank))

    i = rng.randint(-20, 20)
    record(f"fib({i})-1", check_addition_formula((-25, 25), (-25, 25), fib=_bump(_fib, i, -1)))

    a_bad, k_bad = rng.randint(2, 12), rng.randint(0, 20)

    def padded_stream(a: int, K: int) -> Iterable:
        for rec in census_stream(a, K):
            if (a, rec.k) == (a_bad, k_bad):
                rec = type(rec)(a, rec.k, a + 1)
            yield rec

    record(f"census({a_bad},{k_bad})=a+1", check_honsberger(12, 20, stream=padded_stream))
    return results
