"""Certified theta = log a / log phi and the densities of the two count classes.

Logarithms are evaluated in binary fixed point as guaranteed enclosures
``[lo, hi] / 2**W`` using

    ln x   = k ln 2 + 2 atanh((x - 2^k) / (x + 2^k)),   2^k <= x < 2^(k+1)
    ln 2   = 2 atanh(1/3)
    ln phi = 2 atanh(sqrt(5) - 2)

Every atanh argument is at most 2/5, so the series tail starting at a term
``t^(2j+1)/(2j+1)`` is at most ``5/4`` of that term. Working precision
doubles until the enclosure is narrow enough and sits strictly between two
integers; the integer part always comes from the exact Z[phi] comparison.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .rank_census import census_counts, ell, rank

__all__ = [
    "PrecisionCapExceeded",
    "ThetaApprox",
    "DensityReport",
    "StatsReport",
    "ExpectedStats",
    "DEFAULT_PRECISION_CAP",
    "precision_cap",
    "log_enclosure",
    "theta_enclosure",
    "theta_approx",
    "density_report",
    "expected_stats",
    "empirical_stats",
    "format_decimal",
    "format_bound",
]

DEFAULT_PRECISION_CAP = 100_000
_START_BITS = 64


class PrecisionCapExceeded(ArithmeticError):
    def __init__(self, what: str, bits: int, achieved: Fraction):
        self.bits = bits
        self.achieved = achieved
        super().__init__(
            f"{what}: precision cap of {bits} bits reached; "
            f"best certified error bound was {format_bound(achieved)}"
        )


def precision_cap() -> int:
    raw = os.environ.get("FIBCENSUS_PRECISION_CAP")
    if not raw:
        return DEFAULT_PRECISION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"FIBCENSUS_PRECISION_CAP must be an integer, got {raw!r}") from None
    if cap < _START_BITS:
        raise ValueError(f"FIBCENSUS_PRECISION_CAP must be at least {_START_BITS}")
    return cap


# ---------------------------------------------------------------------------
# decimal rendering (exact, locale-free)
# ---------------------------------------------------------------------------


_STR_CHUNK = 2000


def int_to_str(n: int) -> str:
    """``str(n)`` without the interpreter's digit limit for huge integers."""
    if n < 0:
        return "-" + int_to_str(-n)
    if n < 10**_STR_CHUNK:
        return str(n)
    half = (len_decimal(n) + 1) // 2
    hi, lo = divmod(n, 10**half)
    return int_to_str(hi) + int_to_str(lo).rjust(half, "0")


def len_decimal(n: int) -> int:
    """Number of decimal digits of ``n > 0``."""
    d = max(1, int(n.bit_length() * 0.30102999566398120))
    while 10**d <= n:
        d += 1
    while d > 1 and 10 ** (d - 1) > n:
        d -= 1
    return d


def format_decimal(x: Fraction, places: int) -> str:
    """Round ``x`` half-to-even to ``places`` decimals."""
    scaled = x * 10**places
    n = round(scaled)
    sign = "-" if n < 0 else ""
    digits = int_to_str(abs(n)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def format_bound(x: Fraction) -> str:
    """Render a nonnegative bound rounded up to two significant digits."""
    if x <= 0:
        return "0"
    e = math.floor(math.log10(x.numerator) - math.log10(x.denominator))
    # fix up possible float misjudgement of the exponent
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    mant = x / Fraction(10) ** (e - 1)
    m = -(-mant.numerator // mant.denominator)  # ceil, in 10..100
    if m == 100:
        m, e = 10, e + 1
    return f"{m // 10}.{m % 10}e{e:+03d}"


def _isqrt_floor(x: Fraction, places: int) -> int:
    """floor(sqrt(x) * 10**places)."""
    scaled = x * 10 ** (2 * places)
    return math.isqrt(scaled.numerator // scaled.denominator)


def _isqrt_ceil(x: Fraction, places: int) -> int:
    scaled = x * 10 ** (2 * places)
    n = -(-scaled.numerator // scaled.denominator)
    r = math.isqrt(n)
    return r if r * r == n else r + 1


# ---------------------------------------------------------------------------
# certified logarithms
# ---------------------------------------------------------------------------


def _atanh_enclosure(t_lo: int, t_hi: int, w: int) -> tuple[int, int]:
    """Enclose atanh(t) * 2**w for 0 <= t_lo/2**w <= t <= t_hi/2**w <= 2/5."""
    if t_hi * 5 > 2 << w:
        raise ValueError("atanh argument must not exceed 2/5")
    if t_hi == 0:
        return 0, 0
    sq_lo = (t_lo * t_lo) >> w
    sq_hi = -((-t_hi * t_hi) >> w)
    p_lo, p_hi = t_lo, t_hi  # enclosures of t^(2j+1) * 2**w
    s_lo = s_hi = 0
    j = 0
    while True:
        d = 2 * j + 1
        s_lo += p_lo // d
        s_hi += -(-p_hi // d)
        p_lo = (p_lo * sq_lo) >> w
        p_hi = -((-p_hi * sq_hi) >> w)
        j += 1
        if p_hi <= 1:
            break
    # remaining terms sum to at most p_hi / (2j+1) / (1 - t^2) <= (5/4) p_hi / (2j+1)
    s_hi += -(-5 * p_hi // (4 * (2 * j + 1))) + 1
    return s_lo, s_hi


def _ln2_enclosure(w: int) -> tuple[int, int]:
    t_lo = (1 << w) // 3
    lo, hi = _atanh_enclosure(t_lo, t_lo + 1, w)
    return 2 * lo, 2 * hi


def _lnphi_enclosure(w: int) -> tuple[int, int]:
    r = math.isqrt(5 << (2 * w))  # floor(sqrt(5) * 2**w); never exact
    two = 2 << w
    lo, hi = _atanh_enclosure(r - two, r + 1 - two, w)
    return 2 * lo, 2 * hi


def log_enclosure(x: int, w: int) -> tuple[int, int]:
    """Integers ``lo, hi`` with ``lo / 2**w <= ln(x) <= hi / 2**w``."""
    if x < 1:
        raise ValueError(f"log_enclosure needs x >= 1, got {x}")
    k = x.bit_length() - 1
    base = 1 << k
    num, den = x - base, x + base
    t_lo = (num << w) // den
    t_hi = -(-(num << w) // den)
    a_lo, a_hi = _atanh_enclosure(t_lo, t_hi, w)
    l2_lo, l2_hi = _ln2_enclosure(w) if k else (0, 0)
    return k * l2_lo + 2 * a_lo, k * l2_hi + 2 * a_hi


def theta_enclosure(x: int, w: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of ln(x) / ln(phi) at working precision ``w`` bits."""
    a_lo, a_hi = log_enclosure(x, w)
    b_lo, b_hi = _lnphi_enclosure(w)
    return Fraction(a_lo, b_hi), Fraction(a_hi, b_lo)


# ---------------------------------------------------------------------------
# theta
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaApprox:
    a: int
    value: str
    error_bound: str
    floor_part: int
    frac_part: str
    precision_bits: int

    @property
    def frac(self) -> Fraction:
        return Fraction(self.frac_part)


def _certified_theta(a: int, digits: int, cap: int | None = None):
    """Return (lo, hi, bits, ell) with hi - lo <= 10**-digits and ell < lo <= hi < ell + 1."""
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    l = ell(a)
    cap = precision_cap() if cap is None else cap
    target = Fraction(1, 10**digits)
    w = _START_BITS
    while True:
        lo, hi = theta_enclosure(a, w)
        if math.floor(lo) > l or math.ceil(hi) < l + 1:
            raise RuntimeError(f"theta enclosure [{float(lo)}, {float(hi)}] disagrees with ell={l}")
        if hi - lo <= target and l < lo and hi < l + 1:
            return lo, hi, w, l
        if w >= cap:
            raise PrecisionCapExceeded(f"theta for a={a}", cap, hi - lo)
        w = min(2 * w, cap)


def theta_approx(a: int, digits: int, cap: int | None = None) -> ThetaApprox:
    lo, hi, w, l = _certified_theta(a, digits, cap)
    v = Fraction(format_decimal((lo + hi) / 2, digits))
    # keep the shown fractional part strictly inside (0, 1); still within 10**-digits
    ulp = Fraction(1, 10**digits)
    v = min(max(v, l + ulp), l + 1 - ulp)
    value = format_decimal(v, digits)
    err = max(hi - v, v - lo)
    return ThetaApprox(
        a=a,
        value=value,
        error_bound=format_bound(err),
        floor_part=l,
        frac_part=format_decimal(v - l, digits),
        precision_bits=w,
    )


# ---------------------------------------------------------------------------
# densities and Remark-style statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityReport:
    a: int
    N: int
    ell: int
    A_N: int
    B_N: int
    share_A: str
    share_B: str
    theta: str
    theta_err: str
    theoretical_A: str
    theoretical_B: str
    deviation: str
    rank_total: int

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "N": self.N,
            "ell": self.ell,
            "A_N": self.A_N,
            "B_N": self.B_N,
            "share_A": self.share_A,
            "share_B": self.share_B,
            "theta": self.theta,
            "theta_err": self.theta_err,
            "theoretical_A": self.theoretical_A,
            "theoretical_B": self.theoretical_B,
            "deviation": self.deviation,
        }


def _split_counts(counts: list[int], l: int) -> tuple[int, int]:
    a_n = sum(1 for c in counts if c == l)
    b_n = sum(1 for c in counts if c == l + 1)
    return a_n, b_n


def density_report(a: int, N: int, digits: int = 20, workers: int = 1) -> DensityReport:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    th = theta_approx(a, digits)
    l = th.floor_part
    counts = census_counts(a, N, workers)
    a_n, b_n = _split_counts(counts, l)
    total = rank(a**N).h
    if a_n + b_n != N or l * a_n + (l + 1) * b_n != total:
        raise RuntimeError(
            f"linear system broken for a={a}, N={N}: A_N={a_n}, B_N={b_n}, rank={total}"
        )
    share_a, share_b = Fraction(a_n, N), Fraction(b_n, N)
    frac = th.frac
    # shares and theoretical values both sum to 1, so the two gaps coincide
    deviation = max(abs(share_a - (1 - frac)), abs(share_b - frac))
    return DensityReport(
        a=a,
        N=N,
        ell=l,
        A_N=a_n,
        B_N=b_n,
        share_A=format_decimal(share_a, digits),
        share_B=format_decimal(share_b, digits),
        theta=th.value,
        theta_err=th.error_bound,
        theoretical_A=format_decimal(1 - frac, digits),
        theoretical_B=th.frac_part,
        deviation=format_decimal(deviation, digits),
        rank_total=total,
    )


class ExpectedStats(NamedTuple):
    expectation: str
    stddev: str


def expected_stats(a: int, digits: int, cap: int | None = None) -> ExpectedStats:
    """E(X) = theta and sigma(X) = sqrt(<theta>(1 - <theta>)), both certified to 10**-digits."""
    extra = 2
    while True:
        lo, hi, _, l = _certified_theta(a, digits + extra, cap)
        f_lo, f_hi = lo - l, hi - l
        g = [f_lo * (1 - f_lo), f_hi * (1 - f_hi)]
        g_lo = min(g)
        g_hi = Fraction(1, 4) if f_lo <= Fraction(1, 2) <= f_hi else max(g)
        places = digits + 2
        s_lo = Fraction(_isqrt_floor(g_lo, places), 10**places)
        s_hi = Fraction(_isqrt_ceil(g_hi, places), 10**places)
        if s_hi - s_lo <= Fraction(1, 2 * 10**digits):
            break
        extra *= 2
    expectation = format_decimal((lo + hi) / 2, digits)
    stddev = format_decimal((s_lo + s_hi) / 2, digits)
    return ExpectedStats(expectation, stddev)


@dataclass(frozen=True)
class StatsReport:
    a: int
    N: int
    expectation: str
    stddev: str
    empirical_mean: str
    empirical_std: str

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "N": self.N,
            "expectation": self.expectation,
            "stddev": self.stddev,
            "empirical_mean": self.empirical_mean,
            "empirical_std": self.empirical_std,
        }


def empirical_stats(a: int, N: int, digits: int = 10, workers: int = 1) -> StatsReport:
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    counts = census_counts(a, N, workers)
    mean = Fraction(sum(counts), N)
    # population variance: the count is treated as a two-point distribution
    var = Fraction(sum(c * c for c in counts), N) - mean * mean
    places = digits + 1
    std = Fraction(_isqrt_floor(var, places), 10**places)
    exp = expected_stats(a, digits)
    return StatsReport(
        a=a,
        N=N,
        expectation=exp.expectation,
        stddev=exp.stddev,
        empirical_mean=format_decimal(mean, digits),
        empirical_std=format_decimal(std, digits),
    )
