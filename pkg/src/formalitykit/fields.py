"""Exact scalars: arbitrary precision rationals and prime fields F_p.

Every computation in this package runs over one of these fields; there is
no floating point anywhere. A field object bundles the arithmetic so that
the linear algebra code stays generic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputValidationError


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


class Rationals:
    """Field operations on fractions.Fraction values."""

    characteristic = 0
    name = "rationals"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(n: int) -> Fraction:
        return Fraction(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return Fraction(1) / a

    @staticmethod
    def div(a, b):
        return Fraction(a) / b

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def parse(s: str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputValidationError(f"bad rational scalar {s!r}: {exc}") from None

    @staticmethod
    def to_str(a) -> str:
        return str(Fraction(a))


class PrimeField:
    """Field operations on integers reduced modulo a prime p."""

    name = "fp"

    def __init__(self, p: int):
        if not is_prime(p):
            raise InputValidationError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def parse(self, s: str):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return self.div(int(num), int(den))
        try:
            return int(s) % self.p
        except ValueError:
            raise InputValidationError(f"bad F_{self.p} scalar {s!r}") from None

    def to_str(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


RATIONALS = Rationals()


@dataclass(frozen=True)
class FieldSpec:
    """Serializable choice of ground field: the rationals or F_p."""

    kind: str = "rationals"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise InputValidationError("rationals take no modulus")
        elif self.kind == "fp":
            if self.p is None or not is_prime(self.p):
                raise InputValidationError(f"fp modulus must be prime, got {self.p}")
        else:
            raise InputValidationError(f"unknown field kind {self.kind!r}")

    def field(self):
        if self.kind == "rationals":
            return RATIONALS
        return PrimeField(self.p)

    def tag(self) -> str:
        return "rationals" if self.kind == "rationals" else f"fp:{self.p}"

    @classmethod
    def parse(cls, tag: str) -> "FieldSpec":
        tag = tag.strip().lower()
        if tag in ("rationals", "q", "qq"):
            return cls()
        if tag.startswith("fp:"):
            try:
                return cls(kind="fp", p=int(tag[3:]))
            except ValueError:
                raise InputValidationError(f"bad field tag {tag!r}") from None
        raise InputValidationError(f"bad field tag {tag!r} (use rationals or fp:P)")


RATIONALS_SPEC = FieldSpec()
