"""Coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ..errors import ContextError, NotAUnitError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Exact coefficient field.  ``p == 0`` is QQ, otherwise the prime field F_p.

    Rational elements are kept as ``int`` when integral and ``Fraction``
    otherwise; F_p elements are ints in ``range(p)``.
    """

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        """Coerce an int, Fraction or field element into this field."""
        if self.p:
            if isinstance(x, int):
                return x % self.p
            if isinstance(x, Rational):
                den = x.denominator % self.p
                if den == 0:
                    raise ContextError(f"denominator of {x} vanishes in F_{self.p}")
                return x.numerator * pow(den, -1, self.p) % self.p
            raise TypeError(f"cannot coerce {x!r} into F_{self.p}")
        if isinstance(x, int):
            return x
        if isinstance(x, Rational):
            return self.norm(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def norm(self, x):
        """Canonical form of the result of +, -, * on field elements."""
        if self.p:
            return x % self.p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if self.p:
            if x % self.p == 0:
                raise NotAUnitError("inverse of 0")
            return pow(x, -1, self.p)
        if x == 0:
            raise NotAUnitError("inverse of 0")
        return self.norm(Fraction(1) / x)

    def div(self, x, y):
        return self.norm(x * self.inv(y))

    def elements(self):
        """All elements, for finite fields only."""
        if not self.p:
            raise ValueError("QQ is infinite")
        return range(self.p)

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p else "QQ"

    @classmethod
    def parse(cls, text: str) -> "Field":
        s = text.strip().upper().replace(" ", "")
        if s in ("QQ", "Q"):
            return QQ
        for prefix in ("GF(", "F_", "F"):
            if s.startswith(prefix):
                body = s[len(prefix):].rstrip(")")
                if body.isdigit():
                    return cls(int(body))
        raise ValueError(f"unknown field {text!r}")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
