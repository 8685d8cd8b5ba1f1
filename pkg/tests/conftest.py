import sys

import pytest


def fib_values_below(limit):
    """Distinct Fibonacci values in [1, limit), by plain iteration."""
    out, a, b = [], 1, 2
    if limit > 1:
        out.append(1)
    while b < limit:
        out.append(b)
        a, b = b, a + b
    return out


def brute_counts(a, K):
    fs = fib_values_below(a**K)
    return [sum(1 for f in fs if a**k <= f < a ** (k + 1)) for k in range(K)]


@pytest.fixture
def brute():
    return brute_counts


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
