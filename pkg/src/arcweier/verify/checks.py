"""Desk-scale checks of formal neighbourhoods and of stratum counts, by exhaustive enumeration."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from ..algebra.linalg import rank
from ..algebra.poly import Poly
from ..algebra.series import Tps
from ..algebra.testring import TestRingSpec, field_ring
from ..errors import BudgetExceeded
from ..geometry.arcs import evaluate_on_arc, jet_presentation, stratum_presentation
from ..geometry.local import jacobian_at, rank_at_point
from ..geometry.presentation import SchemePresentation
from ..geometry.variety import SpecialCI, quadric_cone
from ..weierstrass import beta_invert, weierstrass_prepare
from .counting import count_points
from .models import GoldenModel, builtin_models, model_map_eval


def _small_elements(T: TestRingSpec, base=0) -> list[Poly]:
    """``base + m`` for every m in the maximal ideal (coefficients over the prime field)."""
    basis = T.nil_basis()
    F = T.field
    if F.p == 0:
        raise ValueError("enumeration needs a finite coefficient field")
    ring = T.ring
    out = []
    for coeffs in itertools.product(range(F.p), repeat=len(basis)):
        e = ring.constant(base)
        for c, b in zip(coeffs, basis):
            if c:
                e = e + b * c
        out.append(e)
    return out


def _deformations(T: TestRingSpec, center: Tps, length: int) -> list[Tps]:
    """All series ``center + delta`` (mod t^length) with delta in the maximal ideal."""
    ring = T.ring
    small = _small_elements(T)
    out = []
    for digits in itertools.product(small, repeat=length):
        out.append(Tps.from_coeffs(ring, [c + d for c, d in zip(center.coeffs[:length], digits)], length))
    return out


def _key(*series: Tps) -> tuple:
    return tuple(tuple(s.coeffs) for s in series)


@dataclass
class DeskReport:
    model: str
    N: int
    ring: str
    x_side: int
    model_side: int
    image_equal: bool
    injective: bool
    inverse_ok: bool
    fiber_sizes: tuple[int, ...]
    unmatched: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.x_side == self.model_side and self.image_equal and self.injective
                and self.inverse_ok and len(self.fiber_sizes) == 1)


def formal_iso_desk_check(M: GoldenModel, T: TestRingSpec, N: int, budget: int = 10**6) -> DeskReport:
    """Compare deformations of (t^d, 0, 0) on X with deformations of the base point of the model.

    X-side: all ``gamma0 + delta`` with delta in m_A (mod t^N) and ``f = 0`` mod
    t^N, recorded as (x mod t^N, y mod t^(N-d), z mod t^N), the precision to
    which the model side determines y.  Model side: model points
    deforming the base point, ``u = 1 + m_A`` and ``xi in m_A`` mod t^(N-d).
    The map is evaluated by ``model_map_eval`` and inverted by preparation
    and division.  ``budget`` caps the number of X-side candidates.
    """
    d = M.d
    ring = T.ring
    L = N - d
    if L < 1:
        raise ValueError("need N > d")
    gamma = M.gamma0_arc(ring, N)

    per_series = len(_small_elements(T)) ** N
    if per_series ** 3 > budget:
        raise BudgetExceeded(f"{per_series ** 3} deformations exceed the budget {budget}")
    xs = _deformations(T, gamma["x"], N)
    zs = _deformations(T, gamma["z"], N)
    ys = _deformations(T, gamma["y"], N)
    f = M.X.equations[0]
    x_side = Counter()
    for x in xs:
        for z in zs:
            for y in ys:
                if evaluate_on_arc(f, {"x": x, "y": y, "z": z}).is_zero():
                    x_side[_key(x, y.truncate(L), z)] += 1

    model_points = []
    names = M.Y.variables
    for vals in itertools.product(_small_elements(T), repeat=len(names)):
        pt = dict(zip(names, vals))
        if M.Y.is_point(pt, ring.one):
            model_points.append(pt)
    units = _deformations(T, Tps.one(ring, L), L)
    tails = _deformations(T, Tps.zero(ring, L), L)

    image = Counter()
    unmatched = []
    inverse_ok = True
    for pt in model_points:
        for u in units:
            for xi in tails:
                res = model_map_eval(M, pt, u.pad(N), xi.pad(N))
                if res.arc is None or not res.residual_zero:
                    unmatched.append((pt, u, xi))
                    continue
                key = _key(res.arc["x"], res.arc["y"].truncate(L), res.arc["z"])
                image[key] += 1
                if key not in x_side:
                    unmatched.append((pt, u, xi))
                # inverse: prepare x, divide z by q
                q, u2 = weierstrass_prepare(res.arc["x"])
                r, xi2 = beta_invert(q, res.arc["z"])
                back = {a: c for a, c in zip(M.q_vars, q.coeffs)}
                back.update({v: c for v, c in zip(M.v_vars, r.coeffs)})
                if back != pt or u2.truncate(L) != u or xi2.truncate(L) != xi:
                    inverse_ok = False

    model_side = sum(image.values())
    return DeskReport(
        M.name, N, str(T), len(x_side), model_side,
        set(image) == set(x_side), all(c == 1 for c in image.values()), inverse_ok,
        tuple(sorted(set(x_side.values()))), unmatched,
    )


@dataclass
class CounterexampleReport:
    model_rank: int
    model_equations: int
    image_arc: dict
    jet_ranks: dict
    jet_expected: dict

    @property
    def ok(self) -> bool:
        return self.model_rank < self.model_equations and all(
            self.jet_ranks[j] == self.jet_expected[j] for j in self.jet_ranks)


def counterexample_check(levels=range(1, 5)) -> CounterexampleReport:
    """(1, 0, 0, 0) is singular on Y_2 while its image arc (1 + t^2, 0, 0) has smooth jets."""
    M = builtin_models()[1]
    point = {"a": 1, "b": 0, "v": 0, "w": 0}
    r = rank_at_point(M.Y, point)
    top = max(levels) + 1
    R = field_ring(M.X.field)
    res = model_map_eval(M, point, Tps.one(R, top), Tps.zero(R, top))
    arc = res.arc
    ranks, expected = {}, {}
    for j in levels:
        J = jet_presentation(M.X, j)
        pt = {f"{v}_{k}": arc[v][k].constant_coeff() for v in M.X.variables for k in range(j + 1)}
        if not J.is_point(pt):
            raise AssertionError("image arc is not a jet point")
        ranks[j] = rank(jacobian_at(J, pt), J.field)
        expected[j] = M.X.n * (j + 1)
    return CounterexampleReport(r.rank, len(M.Y.equations), arc, ranks, expected)


@dataclass
class CensusReport:
    q: int
    level: int
    total: int
    by_order: dict
    residual: int
    stratum_counts: dict
    expected_by_order: dict

    @property
    def ok(self) -> bool:
        return (sum(self.by_order.values()) + self.residual == self.total
                and all(self.by_order[d] == self.expected_by_order[d] for d in self.by_order))


def _with_conditions(P: SchemePresentation, zero: list[Poly], nonzero: list[Poly], name: str):
    return SchemePresentation(
        name, P.ring, P.tags,
        list(P.equations) + zero, list(P.equation_tags) + [f"cond{i}" for i in range(len(zero))],
        list(P.inverted) + nonzero, list(P.inverted_tags) + [f"inv{i}" for i in range(len(nonzero))],
        P.notes,
    )


def census(X: SpecialCI | None = None, q: int = 3, orders=(0, 1), workers: int = 1) -> CensusReport:
    """Partition jets mod t^(2D+1), D = max(orders), by the t-order of psi.

    Jets of order 0 are compared with |D_0| times the free higher
    coefficients (m - n per extra level, the smooth case); those of order D
    are exactly the points of D_D.  The rest form the residual locus.
    """
    X = X or quadric_cone()
    D = max(orders)
    if any(0 < d < D for d in orders):
        raise ValueError("only the smooth order 0 and the top order D can be compared with strata")
    level = 2 * D
    J = jet_presentation(X, level)
    total = count_points(J, q, workers=workers).count
    ring = J.ring
    arc = {v: Tps.from_coeffs(ring, [ring.gen(f"{v}_{k}") for k in range(level + 1)], level + 1)
           for v in X.variables}
    psi = evaluate_on_arc(X.psi, arc)
    by_order, strata, expected = {}, {}, {}
    for d in orders:
        P = _with_conditions(J, [psi[k] for k in range(d)], [psi[d]], f"psi-order {d}")
        by_order[d] = count_points(P, q, workers=workers).count
        strata[d] = count_points(stratum_presentation(X, d), q, workers=workers).count
        free = (X.m - X.n) * (level - 2 * d)
        expected[d] = strata[d] * q**free
    R = _with_conditions(J, [psi[k] for k in range(D + 1)], [], "residual")
    residual = count_points(R, q, workers=workers).count
    return CensusReport(q, level, total, by_order, residual, strata, expected)
