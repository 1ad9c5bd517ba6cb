"""Coefficient fields: the rationals and prime fields.

Rational coefficients are ``gmpy2.mpq`` values (always in lowest terms with a
positive denominator); prime-field coefficients are plain ``int`` residues in
``[0, p)``.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from .errors import SkodaError


class Field:
    """Either QQ (``p == 0``) or GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p < 0:
            raise SkodaError(f"invalid characteristic {p}")
        if p and not gmpy2.is_prime(p):
            raise SkodaError(f"{p} is not prime")
        self.p = int(p)

    @classmethod
    def from_descriptor(cls, desc) -> "Field":
        if desc in ("Q", "QQ", None):
            return cls(0)
        if isinstance(desc, dict) and "Fp" in desc:
            return cls(int(desc["Fp"]))
        raise SkodaError(f"unknown field descriptor {desc!r}")

    def descriptor(self):
        return "Q" if self.p == 0 else {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def one(self):
        return mpq(1) if self.p == 0 else 1

    @property
    def zero(self):
        return mpq(0) if self.p == 0 else 0

    def __call__(self, value):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into the field."""
        if self.p == 0:
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, (Fraction, type(mpq(0)))):
            num, den = int(value.numerator), int(value.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, c):
        if self.p == 0:
            return 1 / c
        return pow(c, -1, self.p)

    def to_str(self, c) -> str:
        return str(c)


QQ = Field(0)
