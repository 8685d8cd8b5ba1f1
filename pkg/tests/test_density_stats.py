from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from fibcensus.density_stats import (
    PrecisionCapExceeded,
    density_report,
    empirical_stats,
    expected_stats,
    format_bound,
    format_decimal,
    int_to_str,
    len_decimal,
    log_enclosure,
    theta_approx,
    theta_enclosure,
)
from fibcensus.rank_census import ell, rank


def mp_theta(a, dps=80):
    with mpmath.workdps(dps):
        return mpmath.log(a) / mpmath.log((1 + mpmath.sqrt(5)) / 2)


def mp_fraction(x):
    m, e = x.man_exp
    return Fraction(int(m) * 2**e) if e >= 0 else Fraction(int(m), 2**-e)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=10**60), st.sampled_from([64, 128, 300]))
def test_log_enclosure_contains_true_value(x, w):
    lo, hi = log_enclosure(x, w)
    with mpmath.workdps(150):
        true = mp_fraction(mpmath.log(x))
    assert Fraction(lo, 2**w) <= true <= Fraction(hi, 2**w)
    assert hi - lo < 2 ** 12 * max(1, x.bit_length())


@pytest.mark.parametrize("a", [2, 3, 7, 10, 199, 10**9 + 7])
def test_theta_enclosure_contains_true_value(a):
    lo, hi = theta_enclosure(a, 200)
    with mpmath.workdps(120):
        true = mp_fraction(mp_theta(a, 120))
    assert lo <= true <= hi
    assert hi - lo < Fraction(1, 10**50)


@pytest.mark.parametrize(
    "a, digits, value, frac",
    [
        (10, 5, "4.78497", "0.78497"),
        (7, 3, "4.044", "0.044"),
        (2, 6, "1.440420", "0.440420"),
    ],
)
def test_theta_examples(a, digits, value, frac):
    th = theta_approx(a, digits)
    assert th.value == value
    assert th.frac_part == frac
    assert th.floor_part == ell(a)
    assert Fraction(th.error_bound.replace("e", "E")) <= Fraction(1, 10**digits)


@pytest.mark.parametrize("a", [2, 3, 5, 7, 10, 11, 29, 123, 199, 521, 843, 10**6])
@pytest.mark.parametrize("digits", [1, 4, 30])
def test_theta_is_certified(a, digits):
    th = theta_approx(a, digits)
    true = mp_fraction(mp_theta(a))
    err = Fraction(th.error_bound)
    assert err <= Fraction(1, 10**digits)
    assert abs(true - Fraction(th.value)) <= err
    assert 0 < th.frac < 1
    assert th.floor_part == ell(a)


def test_lucas_base_fraction_near_one():
    # 199 = L(11) sits just below phi^11, so theta is a hair under 11
    th = theta_approx(199, 30)
    assert th.floor_part == 10
    assert 1 - th.frac < Fraction(1, 10**3)
    assert Fraction(th.error_bound) <= Fraction(1, 10**30)


def test_precision_cap():
    with pytest.raises(PrecisionCapExceeded, match="precision cap of 64 bits"):
        theta_approx(10, 40, cap=64)


def test_precision_cap_env(monkeypatch):
    monkeypatch.setenv("FIBCENSUS_PRECISION_CAP", "100")
    with pytest.raises(PrecisionCapExceeded):
        theta_approx(10, 60)
    monkeypatch.setenv("FIBCENSUS_PRECISION_CAP", "oops")
    with pytest.raises(ValueError):
        theta_approx(10, 5)


def test_density_report_small():
    rep = density_report(10, 100)
    assert (rep.A_N, rep.B_N) == (21, 79)
    assert rep.share_B.startswith("0.79")
    assert rep.rank_total == rank(10**100).h == 4 * 21 + 5 * 79


@pytest.mark.parametrize("a, N", [(2, 500), (3, 700), (7, 1000), (10, 2000), (100, 300), (199, 800)])
def test_linear_system_exact(a, N):
    rep = density_report(a, N, digits=8)
    l = ell(a)
    assert rep.A_N + rep.B_N == N
    assert l * rep.A_N + (l + 1) * rep.B_N == rank(a**N).h


def test_convergence_direction_base_10():
    frac = Fraction(theta_approx(10, 20).frac_part)
    d100 = abs(Fraction(density_report(10, 100).share_B) - frac)
    d10k = abs(Fraction(density_report(10, 10**4).share_B) - frac)
    assert d10k < d100


def test_density_examples():
    assert abs(Fraction(density_report(7, 10**4).share_A) - Fraction("0.956")) < Fraction("0.02")
    assert Fraction(density_report(199, 10**4).share_B) >= Fraction("0.999")


def test_report_schema_keys():
    keys = list(density_report(3, 10).as_dict())
    assert keys == ["a", "N", "ell", "A_N", "B_N", "share_A", "share_B", "theta", "theta_err",
                    "theoretical_A", "theoretical_B", "deviation"]


def test_expected_stats_examples():
    e, s = expected_stats(10, 5)
    assert abs(Fraction(e) - Fraction("4.78497")) <= Fraction(1, 10**5)
    assert abs(Fraction(s) - Fraction("0.41085")) <= Fraction(1, 10**4)
    assert Fraction(expected_stats(199, 5).stddev) < Fraction("0.01")


@pytest.mark.parametrize("a", [2, 3, 6, 7, 10, 199, 1000])
def test_expected_stddev_matches_oracle(a):
    with mpmath.workdps(60):
        t = mp_theta(a, 60)
        p = t - mpmath.floor(t)
        sd = mp_fraction(mpmath.sqrt(p * (1 - p)))
    got = expected_stats(a, 12)
    assert abs(Fraction(got.stddev) - sd) <= Fraction(1, 10**12)
    assert 0 <= Fraction(got.stddev) <= Fraction(1, 2)


@pytest.mark.parametrize("a, N, mean", [(10, 4, "4.75"), (2, 6, "1.5")])
def test_empirical_mean_examples(a, N, mean):
    rep = empirical_stats(a, N, digits=6)
    assert Fraction(rep.empirical_mean) == Fraction(mean)


@pytest.mark.parametrize("a, N", [(2, 50), (10, 300), (7, 123), (199, 40)])
def test_empirical_mean_identity(a, N):
    rep = empirical_stats(a, N, digits=12)
    dens = density_report(a, N, digits=12)
    l = ell(a)
    assert Fraction(rep.empirical_mean) == l + Fraction(dens.share_B)
    assert l <= Fraction(rep.empirical_mean) <= l + 1
    p = Fraction(dens.B_N, N)
    # population deviation of a two-point sample
    assert abs(Fraction(rep.empirical_std) ** 2 - p * (1 - p)) < Fraction(1, 10**10)


def test_empirical_stats_needs_two():
    with pytest.raises(ValueError):
        empirical_stats(10, 1)


@pytest.mark.parametrize(
    "x, places, s",
    [(Fraction(1, 3), 4, "0.3333"), (Fraction(-1, 8), 2, "-0.12"), (Fraction(5, 2), 0, "2"), (Fraction(1, 200), 2, "0.00")],
)
def test_format_decimal(x, places, s):
    assert format_decimal(x, places) == s


@pytest.mark.parametrize("x, s", [(Fraction(1, 3), "3.4e-01"), (Fraction(1, 10**31), "1.0e-31"), (Fraction(99999, 10**5), "1.0e+00"), (Fraction(0), "0")])
def test_format_bound_rounds_up(x, s):
    assert format_bound(x) == s
    assert Fraction(s) >= x


def test_int_to_str_huge():
    n = 7**20000
    assert len(int_to_str(n)) == len_decimal(n)
    assert int_to_str(n)[:5] == int_to_str(n // 10 ** (len_decimal(n) - 5))
