"""Coefficient fields: the rationals and prime fields Z/p.

Prime-field elements are canonical representatives in [0, p); rationals are
`fractions.Fraction` (always stored reduced, positive denominator).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import RingError


def _is_prime(n: int) -> bool:
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


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "rationals" | "prime_field"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise RingError("rationals have characteristic 0")
        elif self.kind == "prime_field":
            if not _is_prime(self.characteristic):
                raise RingError(
                    f"characteristic {self.characteristic} is not prime"
                )
        else:
            raise RingError(f"unknown field kind {self.kind!r}")

    @property
    def p(self) -> int:
        return self.characteristic

    def normalize(self, c):
        """Canonical representative of a coefficient (int/Fraction input)."""
        if self.characteristic:
            return int(c) % self.characteristic
        if isinstance(c, Fraction):
            return c
        return Fraction(c)

    def add(self, a, b):
        if self.characteristic:
            return (a + b) % self.characteristic
        return a + b

    def mul(self, a, b):
        if self.characteristic:
            return (a * b) % self.characteristic
        return a * b

    def neg(self, a):
        if self.characteristic:
            return (-a) % self.characteristic
        return -a

    def inv(self, a):
        if self.characteristic:
            if a % self.characteristic == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, self.characteristic - 2, self.characteristic)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def is_zero(self, a) -> bool:
        return a == 0

    def coeff_str(self, a) -> str:
        return str(a)


def QQ() -> FieldSpec:
    return FieldSpec("rationals", 0)


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime_field", p)
