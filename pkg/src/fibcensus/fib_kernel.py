"""Exact Fibonacci and Lucas numbers for arbitrary integer indices.

The fast path is fast doubling over the binary expansion of the index::

    F(2n)   = F(n) * (2 F(n+1) - F(n))
    F(2n+1) = F(n)^2 + F(n+1)^2

Negative indices use F(-n) = (-1)^(n+1) F(n).
"""

from __future__ import annotations

from typing import NamedTuple

__all__ = ["FibPair", "fib_pair", "fib", "lucas", "fib_iter_oracle"]


class FibPair(NamedTuple):
    """Consecutive Fibonacci values ``(F(n), F(n+1))`` at index ``n >= 0``."""

    n: int
    lo: int
    hi: int

    def advance(self) -> FibPair:
        return FibPair(self.n + 1, self.hi, self.lo + self.hi)

    def retreat(self) -> FibPair:
        return FibPair(self.n - 1, self.hi - self.lo, self.lo)


def fib_pair(n: int) -> FibPair:
    if n < 0:
        raise ValueError(f"fib_pair needs a nonnegative index, got {n}")
    a, b = 0, 1  # (F(0), F(1))
    for bit in bin(n)[2:]:
        # (F(j), F(j+1)) -> (F(2j), F(2j+1))
        a, b = a * (2 * b - a), a * a + b * b
        if bit == "1":
            a, b = b, a + b
    return FibPair(n, a, b)


def fib(n: int) -> int:
    if n >= 0:
        return fib_pair(n).lo
    value = fib_pair(-n).lo
    return value if n % 2 else -value


def lucas(n: int) -> int:
    return fib(n - 1) + fib(n + 1)


def fib_iter_oracle(n: int) -> int:
    """Plain iteration of the recurrence; slow, used to cross-check :func:`fib_pair`."""
    if n < 0:
        raise ValueError(f"oracle needs a nonnegative index, got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a
