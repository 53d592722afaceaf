"""t-adic solvers for contraction fixed points and for lifts of stratum points.

All solvers work at an explicit truncation and say how many t-digits of
their answer are certified.  Divisibility is always checked exactly; a
failed check is reported as an obstruction and never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import SimpleNamespace
from typing import Mapping, Sequence

from .algebra.jacobian import adjugate, determinant, matvec
from .algebra.series import Tps
from .algebra.taylor import taylor_expand
from .errors import ContextError, InvalidPoint, OrderError
from .geometry.arcs import evaluate_on_arc, n1_presentation
from .geometry.variety import SpecialCI
from .weierstrass import weierstrass_degree, weierstrass_divide


@dataclass
class LiftReport:
    solution: tuple[Tps, ...]
    iterations: int
    precision: int
    residual_zero: bool
    obstruction: str | None = None
    witness: object = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.obstruction is None and self.residual_zero

    def to_text(self) -> str:
        lines = [f"status: {'ok' if self.ok else 'obstruction' if self.obstruction else 'residual nonzero'}",
                 f"iterations: {self.iterations}",
                 f"certified: mod t^{self.precision}",
                 f"residual_zero: {str(self.residual_zero).lower()}"]
        for i, s in enumerate(self.solution):
            lines.append(f"nu[{i + 1}]: {s}")
        for k, v in self.extra.items():
            if isinstance(v, Mapping):
                lines += [f"{k} {name}: {s}" for name, s in v.items()]
            else:
                lines.append(f"{k}: {v}")
        if self.obstruction:
            lines.append(f"obstruction: {self.obstruction}")
        return "\n".join(lines) + "\n"


def _series_ops(sample: Tps):
    return SimpleNamespace(zero=Tps.zero(sample.ring, sample.N), one=Tps.one(sample.ring, sample.N))


def _apply(h, nu: Sequence[Tps], variables) -> list[Tps]:
    if callable(h):
        return list(h(list(nu)))
    vals = dict(zip(variables, nu))
    one = Tps.one(nu[0].ring, nu[0].N)
    return [p.evaluate(vals, one) for p in h]


def tadic_fixed_point(h, nu1: Sequence[Tps], variables: Sequence[str] | None = None) -> LiftReport:
    """The unique ``nu0`` with ``nu0 + t h(nu0) = nu1`` at the truncation of ``nu1``.

    ``h`` is a sequence of polynomials (in ``variables``, default the ring
    variables of ``h[0]``) or a callable on vectors of series.  The iteration
    ``nu <- nu1 - t h(nu)`` fixes one more t-digit per step.
    """
    nu1 = list(nu1)
    if not nu1:
        return LiftReport((), 0, 0, True)
    N = nu1[0].N
    if not callable(h):
        h = list(h)
        if len(h) != len(nu1):
            raise ContextError("h must map n-space to n-space")
        if variables is None:
            variables = h[0].ring.variables if h else ()
    nu = list(nu1)
    iterations = 0
    for iterations in range(1, N + 2):
        new = [a - b.shift_up(1) for a, b in zip(nu1, _apply(h, nu, variables))]
        if new == nu:
            break
        nu = new
    else:
        raise AssertionError("fixed-point iteration did not stabilise")
    check = [a + b.shift_up(1) for a, b in zip(nu, _apply(h, nu, variables))]
    return LiftReport(tuple(nu), iterations, N, check == nu1)


@dataclass
class CramerResult:
    member: bool
    nu: tuple[Tps, ...] | None
    precision: int
    psi_order: int
    obstruction: str | None = None
    witness: object = None


def cramer_image_test(phi: Sequence[Sequence[Tps]], u: Sequence[Tps], d: int | None = None) -> CramerResult:
    """Decide whether ``u`` lies in the image of ``phi`` and return the preimage.

    ``u = phi nu`` iff ``phi' u = psi nu``; the division by ``psi = det phi`` is a
    Weierstrass division whose remainder must vanish.  The preimage is
    certified modulo ``t^(N - d)``.
    """
    u = list(u)
    ops = _series_ops(u[0])
    psi = determinant([list(r) for r in phi], ops)
    order = weierstrass_degree(psi)
    if d is not None and d != order:
        raise OrderError(f"psi has certified order {order}, not {d}")
    d = order
    N = u[0].N
    if N <= d:
        raise ContextError("truncation must exceed the order of psi")
    adj = adjugate([list(r) for r in phi], ops)
    w = matvec(adj, u, ops.zero)
    nu = []
    for i, wi in enumerate(w):
        res = weierstrass_divide(psi, wi)
        if not res.remainder.is_zero():
            return CramerResult(False, None, N - d, d,
                                f"component {i + 1} of phi'u is not divisible by psi (remainder {res.remainder})",
                                res.remainder)
        nu.append(res.quotient.truncate(N - d))
    low = [[x.truncate(N - d) for x in row] for row in phi]
    back = matvec(low, nu, Tps.zero(u[0].ring, N - d))
    if back != [x.truncate(N - d) for x in u]:
        raise AssertionError("preimage does not map back to u")
    return CramerResult(True, tuple(nu), N - d, d)


# -- stratum points ----------------------------------------------------------

def _as_arc(X: SpecialCI, xbar) -> dict[str, Tps]:
    if isinstance(xbar, Mapping):
        return {v: xbar[v] for v in X.variables}
    xbar = list(xbar)
    if len(xbar) != X.m:
        raise ContextError("arc must have one series per variable")
    return dict(zip(X.variables, xbar))


def stratum_check(X: SpecialCI, xbar, d: int) -> str | None:
    """``None`` if ``xbar`` satisfies the D_d conditions exactly, else the failing condition."""
    arc = _as_arc(X, xbar)
    N = next(iter(arc.values())).N
    if N < 2 * d + 1:
        return f"truncation {N} is below t^{2 * d + 1}"
    f_vals = [evaluate_on_arc(f, arc) for f in X.equations]
    for i, s in enumerate(f_vals):
        for k in range(2 * d + 1):
            if s[k].terms:
                return f"f{i + 1} has nonzero t^{k} coefficient {s[k]}"
    psi = evaluate_on_arc(X.psi, arc)
    for k in range(d):
        if psi[k].terms:
            return f"psi has nonzero t^{k} coefficient {psi[k]}"
    r = psi[d].residue()
    if not r.terms or not r.is_constant():
        return f"t^{d} coefficient of psi is not a unit: {psi[d]}"
    return None


def lift_stratum_point(X: SpecialCI, xbar, d: int, N: int | None = None) -> LiftReport:
    """Solve ``f(xbar + t^(2d+1) nu) = 0`` at truncation N with ``nu`` on the y-block.

    Applying phi' turns the equation into
    ``psi nu = -(phi' f(xbar) + phi' R(nu)) / t^(2d+1)`` with ``R`` the part of
    the expansion of degree >= 2 in ``nu``.  Dividing by ``psi = t^d w`` needs
    ``phi' f(xbar) = 0 mod t^(3d+1)``; this is checked and a failure is reported
    as an obstruction.  The solution is unique modulo ``t^(N - 3d - 1)`` and
    the residual is then exactly zero modulo ``t^N`` for one equation
    (``t^(N - d)`` in general).
    """
    problem = stratum_check(X, xbar, d)
    if problem:
        raise InvalidPoint(f"not a point of D_{d}: {problem}")
    arc = _as_arc(X, xbar)
    given = next(iter(arc.values())).N
    N = given if N is None else N
    if N > given:
        raise ContextError(f"point is only known modulo t^{given}")
    s_exp = 2 * d + 1
    cut = s_exp + d
    if N <= cut:
        raise ContextError(f"need N >= {cut + 1} to determine any digit of nu")
    arc = {v: s.truncate(N) for v, s in arc.items()}
    ring = next(iter(arc.values())).ring
    L = N - cut

    phi, phi_adj, psi = X.jacobian.evaluate(arc, Tps.one(ring, N))
    winv = psi.shift_down(d).inverse().truncate(L)
    f0 = [evaluate_on_arc(f, arc) for f in X.equations]
    a0 = matvec(phi_adj, f0, Tps.zero(ring, N))
    for i, a in enumerate(a0):
        for k in range(cut):
            if a[k].terms:
                msg = (f"phi'(x) f(x) has nonzero t^{k} coefficient {a[k]} in row {i + 1}; "
                       f"no correction of the y-block by t^{s_exp} nu exists")
                return LiftReport((), 0, 0, False, msg, (i, k, a[k]))

    s = Tps.monomial(ring, s_exp, N)
    nu = [Tps.zero(ring, L) for _ in X.y_vars]
    iterations = 0
    for iterations in range(1, N + 2):
        direction = {y: s * n.pad(N) for y, n in zip(X.y_vars, nu)}
        pieces = taylor_expand(X.equations, arc, direction)
        high = [sum(p[2:], Tps.zero(ring, N)) for p in pieces]
        rhs = matvec(phi_adj, [f + r for f, r in zip(f0, high)], Tps.zero(ring, N))
        new = []
        for i, g in enumerate(rhs):
            low = [k for k in range(cut) if g[k].terms]
            if low:
                msg = f"row {i + 1}: t^{low[0]} coefficient {g[low[0]]} blocks division by t^{cut}"
                return LiftReport(tuple(nu), iterations, 0, False, msg, (i, low[0], g[low[0]]))
            new.append(-(winv * g.shift_down(cut)))
        if new == nu:
            break
        nu = new
    else:
        raise AssertionError("lifting iteration did not stabilise")

    lifted = dict(arc)
    for y, n in zip(X.y_vars, nu):
        lifted[y] = lifted[y] + s * n.pad(N)
    exact_to = N if X.n == 1 else N - d
    residual = [evaluate_on_arc(f, lifted).truncate(exact_to) for f in X.equations]
    rep = LiftReport(tuple(nu), iterations, L, all(r.is_zero() for r in residual))
    rep.extra["residual exact mod"] = f"t^{exact_to}"
    rep.extra["arc"] = lifted
    return rep


# -- the correspondence between N and N_1 ------------------------------------

def _tail_map(X: SpecialCI, x: Mapping[str, Tps]):
    """``nu -> phi'(x) H(x, nu)`` with ``f(x + t psi nu) = f(x) + t psi phi nu + (t psi)^2 H``."""
    ring = next(iter(x.values())).ring
    L = next(iter(x.values())).N
    one = Tps.one(ring, L)
    phi, phi_adj, psi = X.jacobian.evaluate(x, one)
    tpsi = psi.shift_up(1)

    def h(nu):
        pieces = taylor_expand(X.equations, x, dict(zip(X.y_vars, nu)))
        H = []
        for p in pieces:
            acc, power = Tps.zero(ring, L), one
            for k in range(2, len(p)):
                acc = acc + power * p[k]
                power = power * tpsi
            H.append(acc)
        return matvec(phi_adj, H, Tps.zero(ring, L))

    return h


@dataclass
class RoundtripReport:
    forward: bool
    reverse_equal: bool
    precision: int
    witness: tuple[Tps, ...]
    recovered: tuple[Tps, ...]
    obstruction: str | None = None

    @property
    def ok(self) -> bool:
        return self.forward and self.reverse_equal and self.obstruction is None


def n_to_n1_roundtrip(X: SpecialCI, x, nu: Sequence[Tps]) -> RoundtripReport:
    """Map a point ``(x, nu)`` of N (``f(x + t psi(x) nu) = 0``) to N_1 and back.

    Forward: the witness ``h = -(nu + t phi'(x) H(x, nu))`` satisfies
    ``phi'(x) f(x) = t psi(x)^2 h``.  Reverse: divide ``phi'(x) f(x)`` by
    ``t psi^2`` and solve ``nu0 + t phi'(x) H(x, nu0) = -h`` by the fixed point.
    """
    arc = _as_arc(X, x)
    ring = next(iter(arc.values())).ring
    N = next(iter(arc.values())).N
    nu = [n.pad(N) if n.N < N else n for n in nu]
    psi = evaluate_on_arc(X.psi, arc)
    tpsi = psi.shift_up(1)
    shifted = dict(arc)
    for y, n in zip(X.y_vars, nu):
        shifted[y] = shifted[y] + tpsi * n
    if not all(evaluate_on_arc(f, shifted).is_zero() for f in X.equations):
        raise InvalidPoint("(x, nu) does not satisfy f(x + t psi(x) nu) = 0")
    weierstrass_degree(psi)  # raises OrderError on a degenerate arc

    h_map = _tail_map(X, arc)
    tail = h_map(nu)
    witness = tuple(-(n + t.shift_up(1)) for n, t in zip(nu, tail))
    P1 = n1_presentation(X, N)
    assignment = {f"{v}_{k}": arc[v][k] for v in X.variables for k in range(N)}
    for i, w in enumerate(witness):
        assignment.update({f"h{i + 1}_{k}": w[k] for k in range(N - 1)})
    forward = P1.is_point(assignment, ring.one)

    a = [evaluate_on_arc(p, arc) for p in X.a_map()]
    tpsi2 = (psi * psi).shift_up(1)
    divisions = [weierstrass_divide(tpsi2, ai) for ai in a]
    for i, res in enumerate(divisions):
        if not res.remainder.is_zero():
            return RoundtripReport(forward, False, 0, witness, (),
                                   f"row {i + 1} of phi'(x) f(x) is not divisible by t psi^2")
    L = min(res.precision for res in divisions)
    if L < 1:
        return RoundtripReport(forward, False, 0, witness, (),
                               f"truncation {N} leaves no certified digit after dividing by t psi^2")
    nu1 = [-res.quotient.truncate(L) for res in divisions]
    low = {v: s.truncate(L) for v, s in arc.items()}
    fp = tadic_fixed_point(_tail_map(X, low), nu1)
    recovered = tuple(fp.solution)
    equal = fp.residual_zero and list(recovered) == [n.truncate(L) for n in nu]
    return RoundtripReport(forward, equal, L, witness, recovered)
