"""Taylor expansion of polynomial maps along series-valued directions."""

from __future__ import annotations

from numbers import Rational
from typing import Mapping, Sequence

from ..errors import ContextError
from .poly import Poly
from .series import Tps


class _Graded:
    """Polynomial in an auxiliary scalar ``eps`` with Tps coefficients, truncated above ``top``."""

    __slots__ = ("parts", "top")

    def __init__(self, parts, top):
        self.parts = list(parts[: top + 1])
        self.top = top

    def __add__(self, other):
        if not isinstance(other, _Graded):
            return NotImplemented
        a, b = self.parts, other.parts
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return _Graded(out, self.top)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return _Graded([p * other for p in self.parts], self.top)
        if not isinstance(other, _Graded):
            return NotImplemented
        out = [None] * min(len(self.parts) + len(other.parts) - 1, self.top + 1)
        for i, x in enumerate(self.parts):
            for j, y in enumerate(other.parts):
                if i + j > self.top:
                    break
                out[i + j] = x * y if out[i + j] is None else out[i + j] + x * y
        return _Graded(out, self.top)

    __rmul__ = __mul__


def taylor_expand(
    polys: Sequence[Poly],
    base: Mapping[str, Tps],
    direction: Mapping[str, Tps],
    degree_bound: int | None = None,
) -> list[list[Tps]]:
    """Homogeneous pieces of ``f(base + direction)`` in the direction, for each ``f``.

    Variables absent from ``direction`` are not shifted.  Entry ``[i][k]`` is
    the degree-``k`` piece of ``polys[i]``; when ``degree_bound`` is at least the
    total degree of ``f``, the pieces sum to ``f(base + direction)`` exactly.
    """
    if not base:
        raise ContextError("empty base point")
    sample = next(iter(base.values()))
    ring, N = sample.ring, sample.N
    for v, s in list(base.items()) + list(direction.items()):
        if not isinstance(s, Tps) or s.N != N or (s.ring is not ring and s.ring != ring):
            raise ContextError(f"value for {v!r} does not share ring and truncation")
    for v in direction:
        if v not in base:
            raise ContextError(f"direction variable {v!r} has no base value")
    top = degree_bound
    if top is None:
        top = max((p.total_degree() for p in polys), default=0)
    top = max(top, 0)
    values = {}
    for v, b in base.items():
        if v in direction:
            values[v] = _Graded([b, direction[v]], top)
        else:
            values[v] = _Graded([b], top)
    zero = Tps.zero(ring, N)
    one = _Graded([Tps.one(ring, N)], top)
    out = []
    for p in polys:
        g = p.evaluate(values, one)
        pieces = [x if x is not None else zero for x in g.parts]
        pieces += [zero] * (top + 1 - len(pieces))
        out.append(pieces)
    return out
