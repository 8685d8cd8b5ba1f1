"""Exact arithmetic and ordering in the ring Z[phi], phi = (1 + sqrt 5) / 2.

An element is stored as ``p + q*phi``. Because ``phi**2 == phi + 1``, the ring
is closed under multiplication, and powers of phi are
``phi**m == F(m-1) + F(m)*phi`` for every integer m. Order is decided with
integer arithmetic only: ``p + q*phi == ((2p + q) + q*sqrt 5) / 2``.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from functools import total_ordering

from .fib_kernel import fib, lucas

__all__ = [
    "GoldenInt",
    "Ordering",
    "golden_arith",
    "golden_sign",
    "phi_pow",
    "conj_pow",
    "floor_ceil_phi_pow",
    "cmp_int_phi_pow",
    "PHI",
    "PHI_CONJ",
]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _sign_sqrt5(u: int, v: int) -> int:
    """Sign of ``u + v*sqrt(5)`` for integers u, v."""
    su, sv = _sign(u), _sign(v)
    if su == 0:
        return sv
    if sv == 0 or su == sv:
        return su
    return su * _sign(u * u - 5 * v * v)


@total_ordering
@dataclass(frozen=True)
class GoldenInt:
    p: int
    q: int = 0

    @classmethod
    def coerce(cls, x: GoldenInt | int) -> GoldenInt:
        if isinstance(x, GoldenInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GoldenInt")

    def __add__(self, other: GoldenInt | int) -> GoldenInt:
        o = GoldenInt.coerce(other)
        return GoldenInt(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other: GoldenInt | int) -> GoldenInt:
        o = GoldenInt.coerce(other)
        return GoldenInt(self.p - o.p, self.q - o.q)

    def __rsub__(self, other: int) -> GoldenInt:
        return GoldenInt.coerce(other) - self

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.p, -self.q)

    def __mul__(self, other: GoldenInt | int) -> GoldenInt:
        o = GoldenInt.coerce(other)
        qq = self.q * o.q
        return GoldenInt(self.p * o.p + qq, self.p * o.q + self.q * o.p + qq)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> GoldenInt:
        if e < 0:
            raise ValueError("negative powers are only available via phi_pow")
        result, base = GoldenInt(1, 0), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sign(self) -> int:
        return _sign_sqrt5(2 * self.p + self.q, self.q)

    def __lt__(self, other: GoldenInt | int) -> bool:
        return (self - GoldenInt.coerce(other)).sign() < 0

    def conjugate(self) -> GoldenInt:
        # phi -> 1 - phi
        return GoldenInt(self.p + self.q, -self.q)

    def __float__(self) -> float:
        return self.p + self.q * 1.6180339887498949

    def __str__(self) -> str:
        return f"{self.p}{self.q:+}*phi"


PHI = GoldenInt(0, 1)
PHI_CONJ = GoldenInt(1, -1)

_OPS = {"add": operator.add, "sub": operator.sub, "mul": operator.mul}


def golden_arith(x: GoldenInt, y: GoldenInt, op: str) -> GoldenInt:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown ring operation {op!r}; expected add, sub or mul") from None
    return fn(x, y)


def golden_sign(x: GoldenInt) -> int:
    return x.sign()


def phi_pow(m: int) -> GoldenInt:
    return GoldenInt(fib(m - 1), fib(m))


def conj_pow(m: int) -> GoldenInt:
    """``(1 - phi)**m`` as an element of Z[phi]."""
    return GoldenInt(fib(m + 1), -fib(m))


def floor_ceil_phi_pow(m: int) -> tuple[int, int]:
    """Exact ``(floor(phi**m), ceil(phi**m))`` from the parity of m.

    The conjugate power lies in (0, 1) for even m >= 2 and in (-1, 0) for odd
    m, and phi**m = L(m) - conj**m.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if m == 0:
        return 1, 1
    lm = lucas(m)
    if m % 2 == 0:
        return lm - 1, lm
    return lm, lm + 1


def cmp_int_phi_pow(x: int, m: int) -> Ordering:
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    return Ordering((GoldenInt(x, 0) - phi_pow(m)).sign())
