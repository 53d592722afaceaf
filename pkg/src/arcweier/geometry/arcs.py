"""Finite presentations of truncated arc-space objects.

Every object is materialised at an explicit truncation.  Variable names are
``{coord}_{k}`` for the t^k coefficient of an arc coordinate; the tags keep
that information in structured form together with a block label:

``jet``      coefficients of a jet
``finite``   coordinates of a finite-type factor
``witness``  auxiliary coefficients certifying a congruence
``tail``     coordinates of a free affine factor (truncated)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..algebra.field import Field
from ..algebra.poly import Poly, PolyRing
from ..algebra.series import Tps, tpoly_divmod
from ..algebra.taylor import taylor_expand
from ..errors import ContextError
from ..weierstrass import BoundedPoly, MonicPoly
from .presentation import SchemePresentation, VarTag
from .variety import SpecialCI


def symbolic_arc(ring: PolyRing, coords: Sequence[str], N: int, length: int | None = None,
                 name=lambda v, k: f"{v}_{k}") -> dict[str, Tps]:
    """Arc whose t^k coefficient of coordinate ``v`` is the variable ``name(v, k)``, k < length."""
    length = N if length is None else length
    out = {}
    for v in coords:
        coeffs = [ring.gen(name(v, k)) for k in range(min(length, N))]
        out[v] = Tps.from_coeffs(ring, coeffs, N)
    return out


def evaluate_on_arc(p: Poly, arc: Mapping[str, Tps], t: str = "t") -> Tps:
    """``p(arc)``; a variable named ``t`` (if present in ``p``'s ring) maps to the series t."""
    sample = next(iter(arc.values()))
    vals = dict(arc)
    if t in p.ring and t not in vals:
        vals[t] = Tps.monomial(sample.ring, 1, sample.N)
    return p.evaluate(vals, Tps.one(sample.ring, sample.N))


def _source(X):
    if isinstance(X, SpecialCI):
        eq_tags = [f"f{i + 1}" for i in range(X.n)]
        return X.variables, X.equations, eq_tags, (), (), X.field
    if isinstance(X, SchemePresentation):
        return (X.variables, X.equations, X.equation_tags, X.inverted, X.inverted_tags, X.field)
    raise TypeError("expected a SpecialCI or a SchemePresentation")


def jet_presentation(X, j: int) -> SchemePresentation:
    """Presentation of the j-th jet scheme (points over ``R[t]/t^{j+1}``).

    Inverted elements of a presentation stay inverted on the constant term
    of their arc expansion, which is what makes the jet of an open subset open.
    """
    if j < 0:
        raise ValueError("jet level must be >= 0")
    coords, eqs, eq_tags, inv, inv_tags, field = _source(X)
    N = j + 1
    names = [f"{v}_{k}" for v in coords for k in range(N)]
    ring = PolyRing(tuple(names), field)
    arc = symbolic_arc(ring, coords, N)
    equations = []
    for tag, f in zip(eq_tags, eqs):
        series = evaluate_on_arc(f, arc)
        for k in range(N):
            if series[k].terms:
                equations.append((f"{tag}[t^{k}]", series[k]))
    inverted = [(f"{tag}[t^0]", evaluate_on_arc(g, arc)[0]) for tag, g in zip(inv_tags, inv)]
    tags = [VarTag(v, k, "jet") for v in coords for k in range(N)]
    name = getattr(X, "name", "") or "X"
    return SchemePresentation(
        f"jets of {name} at level {j}", ring, tags,
        [p for _, p in equations], [t for t, _ in equations],
        [p for _, p in inverted], [t for t, _ in inverted],
        (f"truncation: t^{N}",),
    )


def stratum_presentation(X: SpecialCI, d: int) -> SchemePresentation:
    """The finite-type factor D_d of arcs along which psi has exact t-order d.

    Variables are the coefficients below t^(2d+1); every higher coefficient of
    every coordinate is a free tail variable (recorded in the notes), the
    y-block correction being determined by lifting.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    N = 2 * d + 1
    ring = PolyRing(tuple(f"{v}_{k}" for v in X.variables for k in range(N)), X.field)
    arc = symbolic_arc(ring, X.variables, N)
    equations = []
    for i, f in enumerate(X.equations):
        series = evaluate_on_arc(f, arc)
        equations += [(f"f{i + 1}[t^{k}]", series[k]) for k in range(N)]
    psi = evaluate_on_arc(X.psi, arc)
    equations += [(f"psi[t^{k}]", psi[k]) for k in range(d)]
    equations = [(t, p) for t, p in equations if p.terms]
    tags = [VarTag(v, k, "finite") for v in X.variables for k in range(N)]
    notes = (
        f"stratum d={d}: f(x) = 0 mod t^{N}, psi(x) = t^{d} * unit",
        f"tail: coefficients t^k, k >= {N}, of {' '.join(X.variables)} are free",
    )
    return SchemePresentation(
        f"D_{d} of {X.name or 'X'}", ring, tags,
        [p for _, p in equations], [t for t, _ in equations],
        [psi[d]], [f"psi[t^{d}]"], notes,
    )


def n1_presentation(X: SpecialCI, N: int, d: int | None = None) -> SchemePresentation:
    """Truncation at t^N of ``phi'(x) f(x) = 0 mod t psi(x)^2``, encoded by a witness h.

    The equations are the coefficients of ``phi'(x) f(x) - t psi(x)^2 h``.  With
    ``d`` given, the order-d certificate of psi is appended (low coefficients
    of psi vanish, the t^d one is inverted).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if d is not None and not 0 <= d < N:
        raise ValueError("need 0 <= d < N")
    wit = [f"h{i + 1}" for i in range(X.n)]
    names = [f"{v}_{k}" for v in X.variables for k in range(N)]
    names += [f"{w}_{k}" for w in wit for k in range(N - 1)]
    ring = PolyRing(tuple(names), X.field)
    arc = symbolic_arc(ring, X.variables, N)
    h = symbolic_arc(ring, wit, N, N - 1)
    psi = evaluate_on_arc(X.psi, arc)
    tpsi2 = (psi * psi).shift_up(1)
    equations = []
    for i, a in enumerate(X.a_map()):
        series = evaluate_on_arc(a, arc) - tpsi2 * h[wit[i]]
        equations += [(f"a{i + 1}[t^{k}]", series[k]) for k in range(N)]
    inverted = []
    if d is not None:
        equations += [(f"psi[t^{k}]", psi[k]) for k in range(d)]
        inverted.append((f"psi[t^{d}]", psi[d]))
    tags = [VarTag(v, k, "finite") for v in X.variables for k in range(N)]
    tags += [VarTag(w, k, "witness") for w in wit for k in range(N - 1)]
    return SchemePresentation(
        f"N1 of {X.name or 'X'} at t^{N}", ring, tags,
        [p for _, p in equations], [t for t, _ in equations],
        [p for _, p in inverted], [t for t, _ in inverted],
        ("witness h: phi'(x) f(x) = t psi(x)^2 h",),
    )


# -- Taylor splitting ---------------------------------------------------------

def _tq_coeffs(q: MonicPoly, ring: PolyRing) -> list[Poly]:
    return [ring.zero] + q.full_coeffs(ring)


def taylor_split(
    g: Sequence[Poly],
    q: MonicPoly,
    xbar: Sequence[BoundedPoly],
    xi: Sequence[Tps],
    N: int,
    variables: Sequence[str] | None = None,
    t: str = "t",
) -> tuple[list[BoundedPoly], list[Tps]]:
    """Split ``g(xbar + t q xi) = gbar + t q g'`` with ``gbar`` the remainder of ``g(xbar)`` mod ``t q``.

    ``g`` may involve the variable ``t``.  The identity is checked exactly at
    truncation ``N`` before returning.
    """
    if not xi:
        raise ContextError("need at least one coordinate")
    ring = xi[0].ring
    d = q.degree
    if variables is None:
        variables = [v for v in g[0].ring.variables if v != t]
    variables = list(variables)
    if len(variables) != len(xbar) or len(variables) != len(xi):
        raise ContextError("xbar and xi must be aligned with the variables")
    for b in xbar:
        if b.bound != d + 1:
            raise ContextError(f"xbar components must have degree bound {d + 1}")
    tq = _tq_coeffs(q, ring)
    tq_s = Tps.from_coeffs(ring, tq[:N], N)
    T = Tps.monomial(ring, 1, N)

    bars, primes = [], []
    for p in g:
        deg_x = max((sum(e[p.ring.index(v)] for v in variables if v in p.ring) for e in p.terms), default=0)
        deg_t = p.degree(t) if t in p.ring else 0
        big = deg_x * d + deg_t + 1
        exact_vals = {v: b.to_tps(big, ring) for v, b in zip(variables, xbar)}
        exact = evaluate_on_arc(p, exact_vals, t)
        quot, rem = tpoly_divmod(list(exact.coeffs), tq)
        bar = BoundedPoly(tuple(rem))

        base = {v: b.to_tps(N, ring) for v, b in zip(variables, xbar)}
        if t in p.ring:
            base[t] = T
        direction = dict(zip(variables, xi))
        pieces = taylor_expand([p], base, direction)[0]
        prime = Tps.from_coeffs(ring, (quot + [ring.zero] * N)[:N], N)
        power = Tps.one(ring, N)
        for k in range(1, len(pieces)):
            prime = prime + power * pieces[k]
            power = power * tq_s

        shifted = {v: base[v] + tq_s * x for v, x in zip(variables, xi)}
        direct = evaluate_on_arc(p, shifted, t)
        if direct != bar.to_tps(N, ring) + tq_s * prime:
            raise AssertionError("Taylor split does not reassemble")
        bars.append(bar)
        primes.append(prime)
    return bars, primes


# -- the scheme N_{2,d} -------------------------------------------------------

@dataclass(frozen=True)
class N2dSystem:
    """Symbolic data behind the N_{2,d} presentation; ``eq7``/``eq5`` are the split forms."""

    X: SpecialCI
    d: int
    N: int
    ring: PolyRing
    q: MonicPoly
    u: Tps
    xbar: tuple[BoundedPoly, ...]
    xi: tuple[Tps, ...]
    nu: tuple[Tps, ...]
    eq7: tuple[Tps, ...]
    eq5: Tps
    eq4: tuple[Tps, ...]
    eq8: Tps

    def names(self) -> dict[str, list[str]]:
        X, d, N = self.X, self.d, self.N
        return {
            "q": [f"q_{k}" for k in range(d)],
            "u0": ["u_0"],
            "xbar": [f"{v}bar_{k}" for v in X.variables for k in range(d + 1)],
            "u_tail": [f"u_{k}" for k in range(1, N)],
            "xi": [f"xi_{v}_{k}" for v in X.variables for k in range(N - 1)],
            "nu": [f"nu_{y}_{k}" for y in X.y_vars for k in range(N - 1)],
        }

    def assignment(self, q: MonicPoly, u: Tps, xbar: Sequence[BoundedPoly],
                   xi: Sequence[Tps], nu: Sequence[Tps]) -> dict[str, Poly]:
        """Variable assignment for concrete data (series are read up to the slots present)."""
        X, d, N = self.X, self.d, self.N
        out = {f"q_{k}": q.coeffs[k] for k in range(d)}
        out.update({f"u_{k}": u[k] for k in range(N)})
        for v, b in zip(X.variables, xbar):
            out.update({f"{v}bar_{k}": b.coeffs[k] for k in range(d + 1)})
        for v, s in zip(X.variables, xi):
            out.update({f"xi_{v}_{k}": s[k] for k in range(N - 1)})
        for y, s in zip(X.y_vars, nu):
            out.update({f"nu_{y}_{k}": s[k] for k in range(N - 1)})
        return out


def n2d_system(X: SpecialCI, d: int, N: int) -> N2dSystem:
    if d < 1:
        raise ValueError("d must be >= 1")
    if N < 2 * d + 2:
        raise ValueError("need N >= 2d + 2")
    names = [f"q_{k}" for k in range(d)] + [f"u_{k}" for k in range(N)]
    names += [f"{v}bar_{k}" for v in X.variables for k in range(d + 1)]
    names += [f"xi_{v}_{k}" for v in X.variables for k in range(N - 1)]
    names += [f"nu_{y}_{k}" for y in X.y_vars for k in range(N - 1)]
    ring = PolyRing(tuple(names), X.field)
    q = MonicPoly(tuple(ring.gen(f"q_{k}") for k in range(d)))
    u = Tps.from_coeffs(ring, [ring.gen(f"u_{k}") for k in range(N)], N)
    xbar = tuple(BoundedPoly(tuple(ring.gen(f"{v}bar_{k}") for k in range(d + 1))) for v in X.variables)
    xi_arc = symbolic_arc(ring, X.variables, N, N - 1, name=lambda v, k: f"xi_{v}_{k}")
    nu_arc = symbolic_arc(ring, X.y_vars, N, N - 1, name=lambda v, k: f"nu_{v}_{k}")
    xi = tuple(xi_arc[v] for v in X.variables)
    nu = tuple(nu_arc[y] for y in X.y_vars)

    tq = Tps.from_coeffs(ring, _tq_coeffs(q, ring)[:N], N)
    a_polys = X.a_map()
    c_poly = X.c_map()
    abar, aprime = taylor_split(a_polys, q, xbar, xi, N, X.variables)
    (cbar,), (cprime,) = taylor_split([c_poly], q, xbar, xi, N, X.variables)

    eq7 = tuple(ab.to_tps(N, ring) + tq * (ap - u * n) for ab, ap, n in zip(abar, aprime, nu))
    u0 = Tps.constant(u[0], N, ring)
    uprime = u.shift_down(1).pad(N)
    eq5 = (cbar.to_tps(N, ring) - u0 * q.to_tps(N, ring)) + tq * (cprime - uprime)

    x_full = {v: b.to_tps(N, ring) + tq * s for v, b, s in zip(X.variables, xbar, xi)}
    qs = q.to_tps(N, ring)
    T = Tps.monomial(ring, 1, N)
    eq4 = tuple(evaluate_on_arc(a, x_full) - T * u * qs * n for a, n in zip(a_polys, nu))
    eq8 = evaluate_on_arc(c_poly, x_full) - u * qs
    if eq7 != eq4 or eq5 != eq8:
        raise AssertionError("split equations do not reassemble")
    return N2dSystem(X, d, N, ring, q, u, xbar, xi, nu, eq7, eq5, eq4, eq8)


def n2d_presentation(X: SpecialCI, d: int, N: int) -> SchemePresentation:
    """Coefficientwise presentation of N_{2,d} at truncation t^N.

    Blocks: ``finite`` holds (q, u_0, xbar), the coordinates of the type-(S)
    factor; ``tail`` holds (xi, nu, u') which form the free affine factor.
    """
    sys_ = n2d_system(X, d, N)
    equations = []
    for i, s in enumerate(sys_.eq7):
        equations += [(f"split_a{i + 1}[t^{k}]", s[k]) for k in range(N)]
    equations += [(f"split_c[t^{k}]", sys_.eq5[k]) for k in range(N)]
    equations = [(t, p) for t, p in equations if p.terms]
    names = sys_.names()
    tags = []
    for v in sys_.ring.variables:
        head, _, k = v.rpartition("_")
        if v in names["q"]:
            tags.append(VarTag("q", int(k), "finite"))
        elif v in names["u0"]:
            tags.append(VarTag("u", 0, "finite"))
        elif v in names["u_tail"]:
            tags.append(VarTag("u", int(k), "tail"))
        elif v in names["xbar"]:
            tags.append(VarTag(head[: -len("bar")], int(k), "finite"))
        else:
            tags.append(VarTag(head, int(k), "tail"))
    notes = (
        f"d={d}: (q, u, xbar, xi, nu) with a(xbar + t q xi) = t u q nu and c(xbar + t q xi) = u q",
        "c = t psi^2, a = phi' f; finite block = (q, u_0, xbar), tail block = (xi, nu, u')",
    )
    return SchemePresentation(
        f"N2,{d} of {X.name or 'X'} at t^{N}", sys_.ring, tags,
        [p for _, p in equations], [t for t, _ in equations],
        [sys_.ring.gen("u_0")], ["u[t^0]"], notes,
    )


# -- type-(S) schemes -----------------------------------------------------------

def s_d_presentation(d: int, n_eqs: int, K: int, field: Field = Field(0)) -> SchemePresentation:
    """Truncation of the zero fibre of ``(q, v, xi) -> v + q xi``: coefficients t^0..t^K, xi_0..xi_K kept.

    For d = 1 and one series the variables are ``a, v, xi_0..xi_K`` and the
    equations read ``v + a xi_0``, ``xi_0 + a xi_1``, ...
    """
    if d < 1 or n_eqs < 1 or K < 0:
        raise ValueError("need d >= 1, n_eqs >= 1, K >= 0")
    qn = ["a"] if d == 1 else [f"a_{k}" for k in range(d)]

    def vname(i, k):
        base = "v" if n_eqs == 1 else f"v{i + 1}"
        return base if d == 1 else f"{base}_{k}"

    def xname(i, k):
        return f"xi_{k}" if n_eqs == 1 else f"xi{i + 1}_{k}"

    names = qn + [vname(i, k) for i in range(n_eqs) for k in range(d)]
    names += [xname(i, k) for i in range(n_eqs) for k in range(K + 1)]
    ring = PolyRing(tuple(names), field)
    N = K + 1
    q = MonicPoly(tuple(ring.gen(a) for a in qn))
    qs = q.to_tps(N, ring) if N > d else Tps.from_coeffs(ring, q.full_coeffs(ring)[:N], N)
    equations = []
    for i in range(n_eqs):
        v = Tps.from_coeffs(ring, [ring.gen(vname(i, k)) for k in range(d)][:N], N)
        xi = Tps.from_coeffs(ring, [ring.gen(xname(i, k)) for k in range(N)], N)
        s = v + qs * xi
        label = "" if n_eqs == 1 else str(i + 1)
        equations += [(f"z{label}[t^{k}]", s[k]) for k in range(N)]
    tags = [VarTag("q", k, "finite") for k in range(d)]
    tags += [VarTag("v" if n_eqs == 1 else f"v{i + 1}", k, "finite") for i in range(n_eqs) for k in range(d)]
    tags += [VarTag("xi" if n_eqs == 1 else f"xi{i + 1}", k, "tail") for i in range(n_eqs) for k in range(N)]
    return SchemePresentation(
        f"S_{d} with {n_eqs} series, xi up to t^{K}", ring, tags,
        [p for _, p in equations], [t for t, _ in equations], (), (),
        (f"v + q xi = 0 read on t^0..t^{K}",),
    )
