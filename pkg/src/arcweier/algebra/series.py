"""Truncated power series in ``t`` with polynomial coefficients."""

from __future__ import annotations

from numbers import Rational
from typing import Sequence

from ..errors import ContextError, NotAUnitError
from .poly import Poly, PolyRing


class Tps:
    """Element of ``R[[t]] / (t^N)`` where ``R`` is a :class:`PolyRing`.

    The coefficient tuple always has length exactly ``N``.  Binary operations
    require identical ``N`` and ring; use :meth:`truncate` or :meth:`pad`
    explicitly when precision has to change.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: Sequence[Poly]):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_coeffs(cls, ring: PolyRing, coeffs, N: int | None = None) -> "Tps":
        coeffs = [ring(c) for c in coeffs]
        if N is None:
            N = len(coeffs)
        if len(coeffs) > N:
            coeffs = coeffs[:N]
        coeffs += [ring.zero] * (N - len(coeffs))
        return cls(ring, coeffs)

    @classmethod
    def zero(cls, ring: PolyRing, N: int) -> "Tps":
        return cls(ring, [ring.zero] * N)

    @classmethod
    def one(cls, ring: PolyRing, N: int) -> "Tps":
        return cls.constant(ring.one, N)

    @classmethod
    def constant(cls, c, N: int, ring: PolyRing | None = None) -> "Tps":
        if ring is None:
            ring = c.ring
        c = ring(c)
        if N == 0:
            return cls(ring, [])
        return cls(ring, [c] + [ring.zero] * (N - 1))

    @classmethod
    def monomial(cls, ring: PolyRing, k: int, N: int, c=1) -> "Tps":
        """``c * t^k`` truncated at ``N``."""
        coeffs = [ring.zero] * N
        if k < N:
            coeffs[k] = ring(c)
        return cls(ring, coeffs)

    @classmethod
    def from_poly(cls, p: Poly, N: int, ring: PolyRing, t: str = "t") -> "Tps":
        """Collect a polynomial in ``t`` (and the variables of ``ring``) by powers of ``t``."""
        coeffs = [ring.zero] * N
        if t not in p.ring:
            return cls.constant(ring(p), N, ring) if N else cls(ring, [])
        ti = p.ring.index(t)
        others = [v for v in p.ring.variables if v != t]
        sub = PolyRing(tuple(others), p.ring.field)
        buckets: dict[int, dict] = {}
        for e, c in p.terms.items():
            k = e[ti]
            if k < N:
                buckets.setdefault(k, {})[e[:ti] + e[ti + 1:]] = c
        for k, terms in buckets.items():
            coeffs[k] = Poly(sub, terms).to_ring(ring)
        return cls(ring, coeffs)

    @classmethod
    def parse(cls, text: str, ring: PolyRing, N: int, t: str = "t", line: int | None = None) -> "Tps":
        from .poly import parse_poly

        big = PolyRing(ring.variables + (t,), ring.field, ring.nilpotent, ring.bound)
        return cls.from_poly(parse_poly(text, big, line), N, ring, t)

    # -- basic properties ----------------------------------------------------
    @property
    def N(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, j: int) -> Poly:
        return self.coeffs[j]

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "Tps"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ContextError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.N != other.N:
            raise ContextError(f"truncation mismatch: N={self.N} vs N={other.N}")

    def _coerce(self, other):
        if isinstance(other, Tps):
            self._check(other)
            return other
        if isinstance(other, (int, Rational, Poly)):
            return Tps.constant(self.ring(other), self.N, self.ring)
        return None

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Tps(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Tps(self.ring, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Tps(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return Tps(self.ring, [a.scale(other) for a in self.coeffs])
        if isinstance(other, Poly):
            other = self.ring(other)
            return Tps(self.ring, [a * other for a in self.coeffs])
        if not isinstance(other, Tps):
            return NotImplemented
        self._check(other)
        N = self.N
        a, b = self.coeffs, other.coeffs
        nza = [i for i in range(N) if a[i].terms]
        nzb = [j for j in range(N) if b[j].terms]
        out = [self.ring.zero] * N
        for i in nza:
            ai = a[i]
            for j in nzb:
                if i + j >= N:
                    break
                out[i + j] = out[i + j] + ai * b[j]
        return Tps(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Tps.one(self.ring, self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Tps):
            return (self.ring is other.ring or self.ring == other.ring) and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational, Poly)):
            try:
                return self == Tps.constant(self.ring(other), self.N, self.ring)
            except ContextError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(c.terms for c in self.coeffs)

    # -- truncation and shifts -----------------------------------------------
    def truncate(self, N: int) -> "Tps":
        if N > self.N:
            raise ContextError(f"cannot raise precision from {self.N} to {N}; use pad()")
        return Tps(self.ring, self.coeffs[:N])

    def pad(self, N: int) -> "Tps":
        """Extend with zero coefficients (an explicit choice of the unknown tail)."""
        if N < self.N:
            return self.truncate(N)
        return Tps(self.ring, self.coeffs + (self.ring.zero,) * (N - self.N))

    def shift_up(self, k: int) -> "Tps":
        """Multiply by ``t^k`` at the same truncation."""
        if k == 0:
            return self
        z = self.ring.zero
        return Tps(self.ring, ((z,) * k + self.coeffs)[: self.N])

    def shift_down(self, k: int) -> "Tps":
        """Drop the first ``k`` coefficients: the quotient by ``t^k``, truncated at ``N - k``."""
        return Tps(self.ring, self.coeffs[k:])

    def low(self, k: int) -> tuple[Poly, ...]:
        return self.coeffs[:k]

    def map(self, fn) -> "Tps":
        return Tps(self.ring, [fn(c) for c in self.coeffs])

    def to_ring(self, ring: PolyRing) -> "Tps":
        return Tps(ring, [c.to_ring(ring) for c in self.coeffs])

    # -- units and orders ----------------------------------------------------
    def residue(self) -> "Tps":
        """Reduction modulo the nilpotent parameters."""
        return Tps(self.ring, [c.residue() for c in self.coeffs])

    def t_order(self, reduce: bool = True) -> int | None:
        """Smallest ``j`` with a nonzero (reduced) coefficient, or ``None`` if undetermined."""
        src = self.residue() if reduce else self
        for j, c in enumerate(src.coeffs):
            if c.terms:
                return j
        return None

    def is_unit(self) -> bool:
        if not self.coeffs:
            return False
        r = self.coeffs[0].residue()
        return bool(r.terms) and r.is_constant()

    def inverse(self) -> "Tps":
        if not self.is_unit():
            raise NotAUnitError(f"series with constant term {self.coeffs[0] if self.coeffs else 0} is not a unit")
        c0inv = self.coeffs[0].inverse()
        out = [c0inv]
        f = self.coeffs
        for j in range(1, self.N):
            acc = self.ring.zero
            for i in range(1, j + 1):
                if f[i].terms and out[j - i].terms:
                    acc = acc + f[i] * out[j - i]
            out.append(-(acc * c0inv))
        return Tps(self.ring, out)

    # -- printing ------------------------------------------------------------
    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c.terms:
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs in ("1", "-1"):
                parts.append(cs[:-1] + mono)
            elif len(c.terms) == 1 and "+" not in cs and " - " not in cs:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        body = parts[0] if parts else "0"
        for part in parts[1:]:
            body += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return f"{body} + O(t^{self.N})"

    def __repr__(self) -> str:
        return f"Tps({self})"


def tps_mul(f: Tps, g: Tps) -> Tps:
    return f * g


def tps_invert(f: Tps) -> Tps:
    return f.inverse()


def t_order(f: Tps, reduce: bool = True) -> int | None:
    return f.t_order(reduce)


def tpoly_divmod(num: Sequence[Poly], monic: Sequence[Poly]) -> tuple[list[Poly], list[Poly]]:
    """Euclidean division of t-polynomials (coefficient lists, low degree first) by a monic divisor."""
    d = len(monic) - 1
    if d < 0 or monic[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    if len(rem) <= d:
        ring = monic[0].ring if monic else rem[0].ring
        return [], rem + [ring.zero] * (d - len(rem))
    quot = [None] * (len(rem) - d)
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k]
        quot[k - d] = c
        if c.terms:
            for i in range(d + 1):
                rem[k - d + i] = rem[k - d + i] - c * monic[i]
    return quot, rem[:d]
