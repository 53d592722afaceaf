"""Infinitesimal test rings F[a_1..a_k] / (a_1..a_k)^M."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable

from .field import QQ, Field
from .poly import Poly, PolyRing


@dataclass(frozen=True)
class TestRingSpec:
    """Local Artinian ring with residue field ``field``: all parameter monomials of total degree >= M vanish."""

    __test__ = False  # not a pytest class

    params: tuple[str, ...] = ()
    M: int = 1
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        if self.M < 1:
            raise ValueError("nilpotency exponent M must be >= 1")

    @property
    def ring(self) -> PolyRing:
        return _ring(self.params, self.M, self.field)

    @property
    def k(self) -> int:
        return len(self.params)

    def gen(self, name: str) -> Poly:
        return self.ring.gen(name)

    def quotient(self, M: int) -> "TestRingSpec":
        """The quotient by the degree-``M`` ideal, for ``M`` below the current exponent."""
        if M > self.M:
            raise ValueError("can only pass to a smaller nilpotency exponent")
        return TestRingSpec(self.params, M, self.field)

    def reduce(self, p: Poly) -> Poly:
        return p.to_ring(self.ring)

    def nil_basis(self) -> list[Poly]:
        """F-basis of the maximal ideal: parameter monomials of degree 1..M-1."""
        ring = self.ring
        out = []
        for deg in range(1, self.M):
            for combo in combinations_with_replacement(range(self.k), deg):
                exp = [0] * self.k
                for i in combo:
                    exp[i] += 1
                out.append(Poly(ring, {tuple(exp): 1}))
        return out

    def basis(self) -> list[Poly]:
        return [self.ring.one] + self.nil_basis()

    def dimension(self) -> int:
        return len(self.basis())

    def extended(self, names: Iterable[str]) -> PolyRing:
        return self.ring.extend(names)

    def __str__(self) -> str:
        if not self.params:
            return str(self.field)
        return f"{{{', '.join(self.params)}; M={self.M}}} over {self.field}"


_RINGS: dict = {}


def _ring(params, M, field) -> PolyRing:
    key = (params, M, field)
    ring = _RINGS.get(key)
    if ring is None:
        if params:
            ring = PolyRing(params, field, params, M)
        else:
            ring = PolyRing((), field)
        _RINGS[key] = ring
    return ring


def field_ring(field: Field = QQ) -> PolyRing:
    """The bare coefficient field as a ring with no variables."""
    return _ring((), 1, field)
