"""Exact coefficient fields.

Coefficients are stored as plain Python numbers that are always kept in
normal form by their field: ``int`` in ``[0, p)`` for GF(p) and
``fractions.Fraction`` for QQ.  Nothing in the package ever touches floats.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Field:
    """Common interface of the coefficient fields."""

    characteristic: int
    name: str

    def __call__(self, value):
        return self.convert(value)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class PrimeField(Field):
    """GF(p) for a prime p; elements are ints reduced to ``[0, p)``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def convert(self, value) -> int:
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def normalize(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def to_str(self, a: int) -> str:
        # symmetric representative reads better: p-1 prints as -1
        return str(a - self.p if a > self.p // 2 else a)

    def to_int(self, a: int) -> int:
        return a - self.p if a > self.p // 2 else a


class RationalField(Field):
    """QQ with exact ``Fraction`` arithmetic.

    The field is infinite, so "uniform" sampling draws integers from a
    bounded symmetric window; every consumer verifies its random draws.
    """

    sample_bound = 100

    def __init__(self):
        self.characteristic = 0
        self.name = "QQ"
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def convert(self, value) -> Fraction:
        return Fraction(value)

    def normalize(self, a):
        return a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b) -> Fraction:
        return Fraction(a) / b

    def random_element(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.sample_bound, self.sample_bound))

    def to_str(self, a: Fraction) -> str:
        return str(a)

    def to_int(self, a: Fraction):
        return int(a) if a.denominator == 1 else str(a)


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)
