"""Exact scalars: arbitrary-precision rationals and prime fields.

Every question in this package is eventually a kernel or rank computation
over one of these two kinds of field, so arithmetic must never round.
Rationals are ``fractions.Fraction`` values; prime-field scalars are plain
ints reduced to ``0 <= value < p``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, FieldMismatchError, UsageError


class RationalField:
    """The field of exact rationals."""

    name = "q"

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise DomainError(f"cannot coerce {value!r} into Q")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by 0")
        return a / b

    def is_zero(self, a):
        return a == 0

    def to_str(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("relapol.QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p for a prime p; values are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.name = f"p={p}"

    def __call__(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DomainError(f"denominator of {value} vanishes mod {self.p}")
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        if isinstance(value, str):
            return self(Fraction(value))
        raise DomainError(f"cannot coerce {value!r} into F_{self.p}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def to_str(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("relapol.GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def parse_field(spec: str):
    """Parse a field spec: ``"q"`` for the rationals or ``"p=<prime>"``."""
    spec = spec.strip()
    if spec == "q":
        return QQ
    if spec.startswith("p="):
        try:
            p = int(spec[2:])
        except ValueError:
            raise UsageError(f"bad field spec {spec!r}") from None
        return PrimeField(p)
    raise UsageError(f"bad field spec {spec!r} (expected 'q' or 'p=<prime>')")


def check_same_field(f1, f2):
    if f1 != f2:
        raise FieldMismatchError(f"mixed fields: {f1!r} vs {f2!r}")
