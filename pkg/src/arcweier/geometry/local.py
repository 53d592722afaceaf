"""Local checks: singular locus, Jacobian rank at a point, jets over smooth charts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..algebra.jacobian import determinant
from ..algebra.linalg import rank
from ..algebra.poly import Poly
from ..errors import ContextError, InvalidPoint
from .arcs import jet_presentation
from .presentation import SchemePresentation
from .variety import SpecialCI


def singular_locus(X: SpecialCI) -> Poly:
    """psi = det(df_i/dy_j); the singular locus of ``X`` is where it vanishes."""
    return X.psi


@dataclass(frozen=True)
class RankResult:
    rank: int
    equations: int
    expected: int
    certified_smooth: bool

    def verdict(self) -> str:
        if self.certified_smooth:
            return "smooth (certified)"
        return "not certified smooth"


def jacobian_at(P, point: Mapping[str, object]) -> list[list]:
    F = P.field
    variables = P.variables
    return [[F(eq.diff(v).evaluate(point, 1)) for v in variables] for eq in P.equations]


def rank_at_point(P, point: Mapping[str, object], codim: int | None = None) -> RankResult:
    """Rank of the Jacobian of ``P``'s equations at a field point.

    The point is certified smooth when the rank reaches ``codim`` (default:
    the number of equations); a lower rank is reported as "not certified".
    """
    if isinstance(P, SpecialCI):
        P = P.as_presentation()
    if not P.is_point(point):
        raise InvalidPoint(f"{dict(point)} is not a point of {P.name}")
    r = rank(jacobian_at(P, point), P.field)
    expected = len(P.equations) if codim is None else codim
    return RankResult(r, len(P.equations), expected, r >= expected)


@dataclass
class ChartReport:
    q: int
    j: int
    etale: tuple[str, ...]
    expected_fiber: int
    fibers: dict = field(default_factory=dict)
    not_smooth: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.not_smooth and all(c == self.expected_fiber for c in self.fibers.values())


def smooth_chart_product_check(P: SchemePresentation, etale: Sequence[str], j: int, q: int,
                               budget: int = 10**7) -> ChartReport:
    """Fibre counts of jets over the base points of a chart with étale coordinates ``etale``.

    The remaining variables must be cut out by as many equations, with their
    Jacobian invertible at each base point; there the fibre of the level-j
    jets over a base point has exactly q^(len(etale) * j) points.
    """
    from ..verify.counting import evaluate_codes, finite_field, solutions

    if isinstance(P, SpecialCI):
        P = P.as_presentation()
    etale = tuple(etale)
    dependent = [v for v in P.variables if v not in etale]
    if len(dependent) != len(P.equations):
        raise ContextError("need one equation per non-étale variable")
    jac = [[eq.diff(v) for v in dependent] for eq in P.equations]
    det = determinant(jac, P.ring) if jac else P.ring.one

    report = ChartReport(q, j, etale, q ** (len(etale) * j))
    base = solutions(P, q, budget)
    ff = finite_field(q)
    det_vals = evaluate_codes(det, P.variables, base, q)
    label = lambda row: tuple(ff.label(int(a)) for a in row)
    for row, dv in zip(base, det_vals):
        report.fibers[label(row)] = 0
        if dv == 0:
            report.not_smooth.append(label(row))

    J = jet_presentation(P, j)
    jets = solutions(J, q, budget)
    base_cols = [J.variables.index(f"{v}_0") for v in P.variables]
    counts = Counter(label(r) for r in jets[:, base_cols]) if len(jets) else Counter()
    for key, c in counts.items():
        report.fibers[key] = c
    return report
