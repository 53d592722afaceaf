"""Finite-dimensional models for the arcs (t^d, 0, 0) on the quadric cone.

For a deformation (x, y, z) of (t^d, 0, 0) write ``x = q u`` (preparation)
and ``z = v(t) + q xi`` (division), with ``v`` of degree < d.  Then
``q u y = z^2`` forces ``v(t)^2 = 0 mod q``; the coefficients of that
remainder are the model equations, in the coefficients of q and of v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..algebra.field import QQ, Field
from ..algebra.poly import Poly, PolyRing
from ..algebra.series import Tps, tpoly_divmod
from ..errors import ContextError
from ..geometry.arcs import evaluate_on_arc
from ..geometry.presentation import SchemePresentation, VarTag
from ..geometry.variety import SpecialCI, quadric_cone
from ..weierstrass import MonicPoly, weierstrass_degree, weierstrass_divide

_Q_NAMES = {1: ("a",), 2: ("a", "b")}
_V_NAMES = {1: ("v",), 2: ("v", "w")}


def _names(d: int):
    qn = _Q_NAMES.get(d, tuple(f"a{k}" for k in range(d)))
    vn = _V_NAMES.get(d, tuple(f"v{k}" for k in range(d)))
    return qn, vn


def model_equations(d: int, field: Field = QQ) -> tuple[PolyRing, list[Poly]]:
    """Coefficients of ``(sum v_k t^k)^2 mod (t^d + sum a_k t^k)``."""
    qn, vn = _names(d)
    ring = PolyRing(qn + vn, field)
    q = [ring.gen(a) for a in qn] + [ring.one]
    v = [ring.gen(x) for x in vn]
    sq = [ring.zero] * (2 * d - 1)
    for i, a in enumerate(v):
        for j, b in enumerate(v):
            sq[i + j] = sq[i + j] + a * b
    _, rem = tpoly_divmod(sq, q)
    return ring, [r for r in rem if r.terms]


def _normalise(p: Poly) -> Poly:
    """Sign convention: leading term (graded lex) has positive coefficient."""
    lead = p.sorted_terms()[0][1] if p.terms else 1
    return -p if lead < 0 else p


@dataclass(frozen=True)
class GoldenModel:
    name: str
    d: int
    X: SpecialCI
    Y: SchemePresentation
    base_point: dict
    q_vars: tuple[str, ...]
    v_vars: tuple[str, ...]
    formula: str
    gamma0: tuple[str, ...] = field(default=())

    def gamma0_arc(self, ring: PolyRing, N: int) -> dict[str, Tps]:
        return {"x": Tps.monomial(ring, self.d, N), "y": Tps.zero(ring, N), "z": Tps.zero(ring, N)}


def golden_model(d: int, field: Field = QQ) -> GoldenModel:
    ring, eqs = model_equations(d, field)
    eqs = [_normalise(e) for e in eqs]
    qn, vn = _names(d)
    tags = [VarTag("q", k, "finite") for k in range(d)] + [VarTag("v", k, "finite") for k in range(d)]
    Y = SchemePresentation(f"Y_{d}", ring, tags, eqs, [f"rem[t^{k}]" for k in range(len(eqs))], (), (),
                           (f"model of the arc (t^{d}, 0, 0) on xy = z^2",))
    v_expr = " + ".join(f"{x}*t^{k}" if k else x for k, x in enumerate(vn))
    formula = f"(q u, z^2 / (q u), {v_expr} + q xi), q = t^{d} + " + " + ".join(
        f"{a}*t^{k}" if k else a for k, a in enumerate(qn))
    return GoldenModel(f"Y_{d}", d, quadric_cone(field), Y, {v: 0 for v in ring.variables}, qn, vn,
                       formula, (f"t^{d}", "0", "0"))


def builtin_models(field: Field = QQ) -> list[GoldenModel]:
    """Models of (t, 0, 0) and (t^2, 0, 0) on the quadric cone."""
    return [golden_model(1, field), golden_model(2, field)]


@dataclass
class ArcResult:
    arc: dict[str, Tps] | None
    residual_zero: bool
    precision: int
    obstruction: str | None = None


def model_map_eval(M: GoldenModel, point: Mapping[str, object], u: Tps, xi: Tps) -> ArcResult:
    """Image ``(q u, z^2 / (q u), v(t) + q xi)`` of a model point and tail data.

    The division recovering y is a Weierstrass division of ``z^2`` by ``x``;
    a nonzero remainder is reported as an obstruction.  y is certified modulo
    ``t^precision`` (see ``DivisionResult``); the other coordinates and the
    residual are exact mod t^N.
    """
    if not M.Y.is_point(point, u.ring.one):
        raise ContextError("model point does not satisfy the model equations")
    ring, N = u.ring, u.N
    if not u.is_unit():
        raise ContextError("u must be a unit")
    q = MonicPoly(tuple(ring(point[a]) for a in M.q_vars))
    v = Tps.from_coeffs(ring, [ring(point[x]) for x in M.v_vars][:N], N)
    qs = q.to_tps(N, ring)
    x = qs * u
    z = v + qs * xi
    sq = z * z
    weierstrass_degree(x)  # raises OrderError if x has no certified order
    res = weierstrass_divide(x, sq)
    if not res.remainder.is_zero():
        return ArcResult(None, False, 0, f"z^2 is not divisible by x (remainder {res.remainder})")
    arc = {"x": x, "y": res.quotient, "z": z}
    residual_zero = all(evaluate_on_arc(f, arc).is_zero() for f in M.X.equations)
    return ArcResult(arc, residual_zero, res.precision)
