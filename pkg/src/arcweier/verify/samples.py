"""Seeded random test data, including genuine arcs on the quadric cone."""

from __future__ import annotations

import random
from typing import Sequence

from ..algebra.field import QQ
from ..algebra.poly import Poly, PolyRing
from ..algebra.series import Tps
from ..algebra.testring import TestRingSpec
from ..weierstrass import BoundedPoly, MonicPoly, beta_invert, weierstrass_prepare


def random_scalar(rng: random.Random, ring: PolyRing, spread: int = 3, nonzero: bool = False):
    F = ring.field
    while True:
        c = rng.randint(-spread, spread) if F.p == 0 else rng.randrange(F.p)
        c = F(c)
        if c != 0 or not nonzero:
            return c


def random_element(rng: random.Random, T: TestRingSpec, unit: bool = False, nilpotent: bool = False,
                   spread: int = 3, density: float = 0.6) -> Poly:
    """Random element of the test ring; ``unit`` forces a nonzero constant term, ``nilpotent`` a zero one."""
    ring = T.ring
    out = ring.zero
    if not nilpotent:
        c = random_scalar(rng, ring, spread, nonzero=unit)
        out = ring.constant(c)
    for b in T.nil_basis():
        if rng.random() < density:
            out = out + b * random_scalar(rng, ring, spread)
    return out


def random_series(rng: random.Random, T: TestRingSpec, N: int, order: int = 0, unit_lead: bool = False,
                  nilpotent: bool = False, spread: int = 3) -> Tps:
    """Series with zero coefficients below ``order``; ``unit_lead`` makes the t^order coefficient a unit."""
    ring = T.ring
    coeffs = [ring.zero] * N
    for k in range(order, N):
        lead = unit_lead and k == order
        coeffs[k] = random_element(rng, T, unit=lead, nilpotent=nilpotent and not lead, spread=spread)
    return Tps.from_coeffs(ring, coeffs, N)


def quadric_arc(rng: random.Random, T: TestRingSpec, d: int, N: int, spread: int = 2) -> dict[str, Tps]:
    """Arc on ``xy = z^2`` with ``x = t^d * unit``, exact at truncation N.

    ``z = t^e Z`` with ``e = ceil(d/2)`` and ``y = z^2 / x`` computed at N + d so
    that no precision is lost in the division.
    """
    e = (d + 1) // 2
    W = N + d
    U = random_series(rng, T, W, 0, unit_lead=True, spread=spread)
    Z = random_series(rng, T, W, 0, spread=spread)
    x = U.shift_up(d)
    z = Z.shift_up(e)
    y = (z * z).shift_down(d) * U.inverse().truncate(W - d)
    arc = {"x": x.truncate(N), "y": y.truncate(N), "z": z.truncate(N)}
    return arc


def stratum_sample(rng: random.Random, T: TestRingSpec, d: int, N: int, spread: int = 2):
    """A D_d point of the quadric cone with a known lift.

    Returns ``(xbar, arc)``: the genuine arc and the same arc with the y
    coefficients from t^(2d+1) on replaced by random garbage.
    """
    arc = quadric_arc(rng, T, d, N, spread)
    y = list(arc["y"].coeffs)
    for k in range(2 * d + 1, N):
        y[k] = random_element(rng, T, spread=spread)
    xbar = dict(arc)
    xbar["y"] = Tps.from_coeffs(T.ring, y, N)
    return xbar, arc


def n_point(rng: random.Random, T: TestRingSpec, e: int, N: int, spread: int = 2):
    """``(x, nu)`` with ``f(x + t psi(x) nu) = 0`` on the quadric cone, psi = x of order e."""
    arc = quadric_arc(rng, T, e, N, spread)
    nu = random_series(rng, T, N, spread=spread)
    tpsi = arc["x"].shift_up(1)
    x = dict(arc)
    x["y"] = arc["y"] - tpsi * nu
    return x, [nu]


def n2d_sample(rng: random.Random, T: TestRingSpec, e: int, N: int, spread: int = 2):
    """Data ``(q, u, xbar, xi, nu)`` on N_{2,d} for the quadric cone with ``d = 2e + 1``.

    ``x = X, z = X w, y = X w^2 + t X h`` gives ``a = f = t X^2 h = c h``.  The
    equation ``a = t u q nu`` then asks for ``h = t nu``.  ``(q, u)`` prepares
    ``c = t x^2`` and ``(xbar, xi)`` divide x by ``t q``.
    """
    ring = T.ring
    W = N + 1
    Xs = random_series(rng, T, W, e, unit_lead=True, spread=spread)
    w = random_series(rng, T, W, spread=spread)
    nu = random_series(rng, T, W, spread=spread)
    t = Tps.monomial(ring, 1, W)
    h = t * nu
    arc = {"x": Xs, "y": Xs * w * w + t * Xs * h, "z": Xs * w}
    arc = {k: v.truncate(N) for k, v in arc.items()}
    c = (arc["x"] * arc["x"]).shift_up(1)
    q, u = weierstrass_prepare(c)
    d = q.degree
    tq = MonicPoly((ring.zero,) + tuple(q.coeffs))
    xbar, xi = [], []
    for v in ("x", "y", "z"):
        r, s = beta_invert(tq, arc[v])
        xbar.append(BoundedPoly(tuple(r.coeffs)))
        xi.append(s)
    return {"q": q, "u": u, "xbar": xbar, "xi": xi, "nu": [nu.truncate(N)], "arc": arc, "d": d}


def random_test_ring(rng: random.Random, field, max_params: int = 2, max_M: int = 3) -> TestRingSpec:
    k = rng.randint(1, max_params)
    return TestRingSpec(tuple("abc"[:k]), rng.randint(2, max_M), field)


def pick(rng: random.Random, seq: Sequence):
    return seq[rng.randrange(len(seq))]


def division_instance(rng: random.Random, field=None, max_k: int = 3, max_M: int = 4, max_N: int = 8,
                      max_n: int = 3, spread: int = 2):
    """Random ``(T, f, g, n)``: f reduces to ``t^n * unit``, all other data random in the test ring."""
    field = field or QQ
    T = TestRingSpec(tuple("abc"[: rng.randint(1, max_k)]), rng.randint(1, max_M), field)
    N = rng.randint(1, max_N)
    n = rng.randint(0, min(max_n, N - 1))
    ring = T.ring
    coeffs = []
    for j in range(N):
        if j < n:
            coeffs.append(random_element(rng, T, nilpotent=True, spread=spread))
        else:
            coeffs.append(random_element(rng, T, unit=(j == n), spread=spread))
    f = Tps.from_coeffs(ring, coeffs, N)
    g = random_series(rng, T, N, spread=spread)
    return T, f, g, n


def fixed_point_instance(rng: random.Random, field=None, max_n: int = 2, max_deg: int = 3, max_N: int = 8,
                         spread: int = 2):
    """Random ``(T, h, variables, nu1)`` for ``nu0 + t h(nu0) = nu1``."""
    field = field or QQ
    T = TestRingSpec(tuple("ab"[: rng.randint(1, 2)]), rng.randint(1, 3), field)
    n = rng.randint(1, max_n)
    variables = tuple(f"n{i + 1}" for i in range(n))
    P = PolyRing(variables, field)
    h = []
    for _ in range(n):
        p = P.zero
        for _ in range(rng.randint(0, 4)):
            deg = rng.randint(0, max_deg)
            mono = P.one
            for _ in range(deg):
                mono = mono * P.gen(pick(rng, variables))
            p = p + mono * random_scalar(rng, P, spread)
        h.append(p)
    N = rng.randint(1, max_N)
    nu1 = [random_series(rng, T, N, spread=spread) for _ in range(n)]
    return T, h, variables, nu1
