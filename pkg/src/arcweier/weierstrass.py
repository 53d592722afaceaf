"""Weierstrass division and preparation over infinitesimal test rings.

Let ``f`` be a truncated series whose reduction modulo the nilpotent
parameters is ``t^n * unit``.  Write ``f = f_low + t^n u`` with ``f_low`` of
t-degree < n (its coefficients lie in the parameter ideal) and ``u`` a unit.
Then ``g = b f + r`` is solved by the fixed-point iteration

    h = g - f_low * b,    r = h mod t^n,    b = u^{-1} * (h div t^n),

whose error is multiplied by an element of the parameter ideal at each
step, so it is exact after at most ``M`` rounds when ``I^M = 0``.

Precision: at truncation ``N`` the quotient is returned with t-degree
< N - n, the unique choice making ``g = b f + r`` hold exactly mod ``t^N``.
It agrees with the quotient of the untruncated series only modulo
``t^(N - M n)`` (``t^(N - n)`` when ``f_low = 0``); ``DivisionResult.precision``
records this bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra.poly import Poly, PolyRing
from .algebra.series import Tps
from .errors import ContextError, OrderError


@dataclass(frozen=True)
class MonicPoly:
    """``t^d + c_{d-1} t^{d-1} + ... + c_0``; a point of the scheme of monic degree-d polynomials."""

    coeffs: tuple[Poly, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def ring(self) -> PolyRing:
        return self.coeffs[0].ring if self.coeffs else None

    def full_coeffs(self, ring: PolyRing | None = None) -> list[Poly]:
        ring = ring or self.ring
        return list(self.coeffs) + [ring.one]

    def to_tps(self, N: int, ring: PolyRing | None = None) -> Tps:
        ring = ring or self.ring
        return Tps.from_coeffs(ring, self.full_coeffs(ring), N)

    def lower_in_ideal(self) -> bool:
        return all(c.in_nil_ideal() for c in self.coeffs)

    def __str__(self) -> str:
        d = self.degree
        parts = ["t" if d == 1 else f"t^{d}"] if d else ["1"]
        for k in range(d - 1, -1, -1):
            c = self.coeffs[k]
            if c.terms:
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


@dataclass(frozen=True)
class BoundedPoly:
    """Polynomial of t-degree < ``bound``; a point of the affine space of such polynomials."""

    coeffs: tuple[Poly, ...]

    @property
    def bound(self) -> int:
        return len(self.coeffs)

    def to_tps(self, N: int, ring: PolyRing | None = None) -> Tps:
        ring = ring or self.coeffs[0].ring
        return Tps.from_coeffs(ring, list(self.coeffs)[:N], N)

    def is_zero(self) -> bool:
        return all(not c.terms for c in self.coeffs)

    def __str__(self) -> str:
        return str(Tps(self.coeffs[0].ring, self.coeffs)).rsplit(" + O(", 1)[0] if self.coeffs else "0"


@dataclass(frozen=True)
class DivisionResult:
    """``quotient`` has t-degree < N - n; ``precision`` counts the digits that do not depend on the truncation.

    Inputs known only modulo t^N determine the quotient of the untruncated
    division modulo ``t^precision``, and the remainder once ``precision >= n``.
    """

    quotient: Tps
    remainder: BoundedPoly
    iterations: int
    precision: int = 0

    def check(self, f: Tps, g: Tps) -> bool:
        """``g == quotient*f + remainder`` exactly at the truncation."""
        return g == self.quotient * f + self.remainder.to_tps(g.N, g.ring)


def weierstrass_degree(f: Tps) -> int:
    n = f.t_order(reduce=True)
    if n is None:
        raise OrderError("reduction of f vanishes to the truncation order; Weierstrass degree undetermined")
    return n


def _split(f: Tps, n: int):
    low = Tps(f.ring, f.coeffs[:n] + (f.ring.zero,) * (f.N - n))
    unit = f.shift_down(n)
    return low, unit


def weierstrass_divide(f: Tps, g: Tps, n: int | None = None) -> DivisionResult:
    """Unique ``(b, r)`` with ``g = b f + r`` mod t^N, ``deg r < n`` and ``deg b < N - n``.

    n is the certified order of ``f``'s reduction; a caller-supplied ``n`` is
    only checked against it.  Each of the at most M - 1 passes through the
    nilpotent low part of f can pull a tail digit down by n places, so the
    quotient agrees with the untruncated one modulo ``t^(N - M n)`` (``t^(N - n)``
    when the low part vanishes).
    """
    f._check(g)
    order = weierstrass_degree(f)
    if n is not None and n != order:
        raise OrderError(f"f has Weierstrass degree {order}, not {n}")
    n = order
    N = f.N
    ring = f.ring
    low, unit = _split(f, n)
    uinv = unit.inverse()
    low_is_zero = low.is_zero()
    bound = (ring.bound if ring.nilpotent else 1) or 1

    b = Tps.zero(ring, N - n)
    h = g
    iterations = 0
    for iterations in range(1, bound + 2):
        bN = b.pad(N)
        h = g if low_is_zero else g - low * bN
        new_b = uinv * h.shift_down(n)
        if new_b == b:
            break
        b = new_b
    else:
        raise AssertionError("Weierstrass iteration failed to stabilise within the nilpotency bound")
    bN = b.pad(N)
    h = g if low_is_zero else g - low * bN
    r = BoundedPoly(tuple(h.coeffs[:n]))
    passes = 1 if low_is_zero else bound
    return DivisionResult(bN, r, iterations, max(N - passes * n, 0))


def weierstrass_prepare(f: Tps) -> tuple[MonicPoly, Tps]:
    """``f = q v`` with ``q`` monic of degree n (lower coefficients in the parameter ideal) and ``v`` a unit."""
    n = weierstrass_degree(f)
    tn = Tps.monomial(f.ring, n, f.N)
    res = weierstrass_divide(f, tn)
    q = MonicPoly(tuple(-c for c in res.remainder.coeffs))
    # f = q v holds exactly mod t^N; v has the precision of the division of t^n by f
    if all(not c.terms for c in q.coeffs):
        v = f.shift_down(n).pad(f.N)
    else:
        v = res.quotient.inverse()
    return q, v


# -- the factorisation maps --------------------------------------------------

def alpha_map(q: MonicPoly, u: Tps) -> Tps:
    """``(q, u) -> q u``."""
    return q.to_tps(u.N, u.ring) * u


def alpha_invert(y: Tps, d: int) -> tuple[MonicPoly, Tps]:
    order = weierstrass_degree(y)
    if order != d:
        raise OrderError(f"reduction has t-order {order}, expected {d}")
    return weierstrass_prepare(y)


def beta_map(q: MonicPoly, v: BoundedPoly, xi: Tps) -> tuple[MonicPoly, Tps]:
    """``(q, v, xi) -> (q, v + q xi)``."""
    if v.bound != q.degree:
        raise ContextError("v must have degree bound equal to deg q")
    return q, v.to_tps(xi.N, xi.ring) + q.to_tps(xi.N, xi.ring) * xi


def beta_invert(q: MonicPoly, z: Tps) -> tuple[BoundedPoly, Tps]:
    """Recover ``(v, xi)`` from ``z = v + q xi`` by dividing ``z`` by ``q``."""
    qs = q.to_tps(z.N, z.ring)
    if weierstrass_degree(qs) != q.degree:
        raise OrderError(f"q = {q} does not reduce to t^{q.degree}")
    res = weierstrass_divide(qs, z)
    return res.remainder, res.quotient


def divide_exact(g: Tps, f: Tps) -> tuple[Tps, BoundedPoly]:
    """Quotient and remainder of ``g`` by ``f``; ``f`` divides ``g`` iff the remainder is zero."""
    res = weierstrass_divide(f, g)
    return res.quotient, res.remainder


def as_monic(coeffs: Sequence[Poly]) -> MonicPoly:
    return MonicPoly(tuple(coeffs))
