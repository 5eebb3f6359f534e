"""Scalar domains: an exact prime field and a float64 stand-in for benchmarks.

All polynomial routines in :mod:`tensorcommit.mvpoly` are generic over a
domain object exposing ``add/sub/mul/neg/inv/div/from_int`` plus ``zero`` and
``one``.  Commitments always run over :class:`PrimeField`; :class:`FloatDomain`
exists solely so runtime trends can be measured in the number domain where
they are usually quoted.
"""

from __future__ import annotations


class PrimeField:
    """Arithmetic in F_p with canonical representatives in [0, p)."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("field order must be at least 2")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n) -> int:
        return int(n) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def rand(self, rng) -> int:
        return rng.randrange(self.p)

    def __repr__(self):
        return f"PrimeField(0x{self.p:x})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class FloatDomain:
    """float64 arithmetic with the same surface as :class:`PrimeField`.

    Division is inexact here, so this domain must never back a commitment;
    it is only used by the interpolation runtime benchmarks.
    """

    __slots__ = ("zero", "one")

    def __init__(self):
        self.zero = 0.0
        self.one = 1.0

    def from_int(self, n) -> float:
        return float(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1.0 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0.0

    def rand(self, rng) -> float:
        return rng.random()

    def __repr__(self):
        return "FloatDomain()"

    def __eq__(self, other):
        return isinstance(other, FloatDomain)

    def __hash__(self):
        return hash("FloatDomain")
