"""Coefficient fields: prime fields F_p (p < 2^31) and the rationals."""

from __future__ import annotations

from fractions import Fraction

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class CoeffField:
    """An exact coefficient field.

    Elements of F_p are plain ints in ``[0, p)``; rationals are ``Fraction``
    instances (always reduced, positive denominator).
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0:
            if not isinstance(p, int) or not is_prime(p) or p >= MAX_PRIME:
                raise ValueError(f"{p!r} is not a prime below 2^31")
        self.p = p

    @classmethod
    def prime(cls, p: int) -> CoeffField:
        return cls(p)

    @classmethod
    def rationals(cls) -> CoeffField:
        return cls(0)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    def __eq__(self, other):
        return isinstance(other, CoeffField) and self.p == other.p

    def __hash__(self):
        return hash(("CoeffField", self.p))

    def __repr__(self):
        return f"F{self.p}" if self.p else "Q"

    __str__ = __repr__

    def __call__(self, value):
        """Coerce an int or Fraction into the field."""
        if self.p:
            if isinstance(value, Fraction):
                return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
            return int(value) % self.p
        return Fraction(value)

    def norm(self, value):
        # results of + - * on field elements; ints stay ints in F_p
        return value % self.p if self.p else value

    def inv(self, value):
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(value, -1, self.p)
        return 1 / Fraction(value)

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def format(self, value) -> str:
        if self.p:
            return str(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
