from hypothesis import given, strategies as st

import pytest

from fibcensus.fib_kernel import FibPair, fib, fib_iter_oracle, fib_pair, lucas


@pytest.mark.parametrize(
    "n, expected",
    [(0, (0, 1)), (10, (55, 89)), (24, (46368, 75025))],
)
def test_fib_pair_examples(n, expected):
    pair = fib_pair(n)
    assert (pair.lo, pair.hi) == expected
    assert pair.n == n


def test_fib_pair_rejects_negative():
    with pytest.raises(ValueError):
        fib_pair(-1)


@pytest.mark.parametrize("n, expected", [(12, 144), (-5, 5), (-4, -3), (-1, 1), (0, 0)])
def test_fib_examples(n, expected):
    assert fib(n) == expected


@pytest.mark.parametrize("n, expected", [(0, 2), (1, 1), (4, 7), (11, 199), (-1, -1)])
def test_lucas_examples(n, expected):
    assert lucas(n) == expected


@pytest.mark.parametrize("n, expected", [(2, 1), (13, 233), (20, 6765)])
def test_oracle_examples(n, expected):
    assert fib_iter_oracle(n) == expected


def test_fast_doubling_matches_iteration():
    a, b = 0, 1
    for n in range(10_001):
        assert fib_pair(n) == (n, a, b)
        a, b = b, a + b


def test_recurrence_dense():
    values = [fib(n) for n in range(10_003)]
    assert all(values[n] + values[n + 1] == values[n + 2] for n in range(10_001))


def test_negative_index_reflection():
    for n in range(-500, 501):
        assert fib(-n) == (1 if n % 2 else -1) * fib(n)


def test_lucas_relations():
    for n in range(-200, 201):
        assert lucas(n) == fib(n - 1) + fib(n + 1)
        assert lucas(n) + lucas(n + 1) == lucas(n + 2)


def test_addition_formula_signed_grid():
    for n in range(-100, 101):
        for m in range(-100, 101):
            assert fib(n + m) == fib(n) * fib(m + 1) + fib(n - 1) * fib(m)


@given(st.integers(min_value=0, max_value=5000))
def test_pair_advance_retreat(n):
    pair = fib_pair(n)
    assert pair.advance() == fib_pair(n + 1)
    if n:
        assert pair.retreat() == fib_pair(n - 1)
    assert isinstance(pair, FibPair)


@given(st.integers(min_value=1, max_value=3000), st.integers(min_value=1, max_value=3000))
def test_gcd_property(m, n):
    # gcd(F(m), F(n)) = F(gcd(m, n)); a cross-check that does not use the addition formula
    from math import gcd

    assert gcd(fib(m), fib(n)) == fib(gcd(m, n))
