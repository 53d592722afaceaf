import itertools
import random

import pytest

from arcweier.algebra import GF, QQ, PolyRing, TestRingSpec, Tps, parse_poly
from arcweier.errors import ContextError, InvalidPoint, OrderError
from arcweier.geometry import evaluate_on_arc, quadric_cone
from arcweier.lifting import cramer_image_test, lift_stratum_point, n_to_n1_roundtrip, stratum_check, tadic_fixed_point
from arcweier.verify.samples import (
    fixed_point_instance, n_point, random_element, random_series, stratum_sample,
)
from arcweier.weierstrass import weierstrass_degree

from oracles import OracleRing, fixed_point_oracle, image_oracle, lift_oracle, multiplication_kernel, n_oracle

X = quadric_cone()
F3_CONE = quadric_cone(GF(3))
EPS = TestRingSpec(("e",), 2, QQ)


def series(text, T=EPS, N=6):
    return Tps.parse(text, T.ring, N)


# -- t-adic fixed point -----------------------------------------------------
def test_fixed_point_zero_map():
    nu1 = [series("1 + 2*t + e*t^3")]
    P = PolyRing(("n",), QQ)
    rep = tadic_fixed_point([P.zero], nu1)
    assert rep.solution == tuple(nu1) and rep.residual_zero


def test_fixed_point_square():
    P = PolyRing(("n",), QQ)
    rep = tadic_fixed_point([parse_poly("n^2", P)], [series("1", N=3)])
    assert rep.solution[0] == series("1 - t + 2*t^2", N=3)
    assert rep.residual_zero and rep.iterations <= 4


def test_fixed_point_origin():
    P = PolyRing(("m", "n"), QQ)
    h = [parse_poly("m*n + n^3", P), parse_poly("m^2 - 3*n", P)]
    rep = tadic_fixed_point(h, [series("0"), series("0")])
    assert all(s.is_zero() for s in rep.solution)


def test_fixed_point_callable_and_shape():
    nu1 = [series("1 + e*t")]
    rep = tadic_fixed_point(lambda nu: [nu[0] * nu[0]], nu1)
    P = PolyRing(("n",), QQ)
    assert rep.solution == tadic_fixed_point([parse_poly("n^2", P)], nu1).solution
    with pytest.raises(ContextError):
        tadic_fixed_point([P.zero, P.zero], nu1)


@pytest.mark.parametrize("seed", range(40))
def test_fixed_point_matches_oracle(seed):
    rng = random.Random(seed)
    field = [QQ, GF(2), GF(3)][seed % 3]
    T, h, variables, nu1 = fixed_point_instance(rng, field)
    rep = tadic_fixed_point(h, nu1, variables)
    assert rep.residual_zero
    assert rep.iterations <= nu1[0].N + 1
    assert [OracleRing.tps_digits(s) for s in rep.solution] == fixed_point_oracle(T, h, nu1)


# -- Cramer image test ------------------------------------------------------
def test_cramer_scalar_member():
    t = series("t")
    c = series("2 + e*t^2")
    res = cramer_image_test([[t]], [t * c])
    assert res.member and res.psi_order == 1 and res.precision == 5
    assert res.nu[0] == c.truncate(5)


def test_cramer_scalar_obstruction():
    res = cramer_image_test([[series("t")]], [series("1")])
    assert not res.member and res.obstruction and "not divisible" in res.obstruction


def test_cramer_quadric_example():
    x = series("t^2 + t^3", N=7)
    res = cramer_image_test([[x]], [series("t^3", N=7)])
    assert res.member and res.precision == 5
    assert res.nu[0] == (series("t", N=7) * series("1 + t", N=7).inverse()).truncate(5)


def test_cramer_errors():
    with pytest.raises(OrderError):
        cramer_image_test([[series("e")]], [series("1")])
    with pytest.raises(OrderError):
        cramer_image_test([[series("t")]], [series("t")], d=2)


def _random_matrix(rng, T, n, N):
    return [[random_series(rng, T, N, order=rng.choice([0, 1, 1, 2, 3])) for _ in range(n)] for _ in range(n)]


def cramer_agreement_instances(count, seed=0):
    """Member instances ``u = phi nu`` and perturbations ``u + t^k delta`` over fields and test rings."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        field = rng.choice([QQ, GF(2), GF(3)])
        M = 1 if rng.random() < 0.5 else 2
        T = TestRingSpec(("a",), M, field)
        n = rng.randint(1, 2)
        N = rng.randint(3, 6)
        phi = _random_matrix(rng, T, n, N)
        try:
            res0 = cramer_image_test(phi, [Tps.zero(T.ring, N)] * n)
        except (OrderError, ContextError):
            continue
        if res0.psi_order > 2:
            continue
        nu = [random_series(rng, T, N) for _ in range(n)]
        u = [sum((phi[i][j] * nu[j] for j in range(n)), Tps.zero(T.ring, N)) for i in range(n)]
        member = rng.random() < 0.5
        if not member:
            k = rng.randint(0, res0.psi_order)
            u = [ui + random_series(rng, T, N).shift_up(k) for ui in u]
        made += 1
        yield T, phi, u, member


@pytest.mark.parametrize("seed", range(4))
def test_cramer_agrees_with_image_oracle(seed):
    for T, phi, u, built_member in cramer_agreement_instances(25, seed):
        res = cramer_image_test(phi, u)
        if built_member:
            assert res.member
        if res.member:
            n, L = len(u), res.precision
            back = [sum((phi[i][j].truncate(L) * res.nu[j] for j in range(n)), Tps.zero(T.ring, L))
                    for i in range(n)]
            assert back == [x.truncate(L) for x in u]
        if T.M == 1:
            assert res.member == image_oracle(T, phi, u)


# -- lifting stratum points -------------------------------------------------
def test_lift_d0_over_f3():
    R = TestRingSpec(("e",), 1, GF(3)).ring
    for c in range(3):
        xbar = {"x": Tps.parse("1", R, 4), "y": Tps.parse(str(c * c), R, 4), "z": Tps.parse(str(c), R, 4)}
        rep = lift_stratum_point(F3_CONE, xbar, 0, 4)
        assert rep.ok and all(s.is_zero() for s in rep.solution)
        assert rep.precision == 3


def test_lift_exact_arc_is_fixed():
    xbar = {v: series("t^2", N=8) for v in "xyz"}
    rep = lift_stratum_point(X, xbar, 2, 8)
    assert rep.ok and rep.solution[0].is_zero()
    assert rep.extra["arc"] == xbar


def test_lift_nilpotent_perturbation():
    xbar = {"x": series("t^2", N=8), "y": series("e*t^5 + 3*e*t^7", N=8), "z": series("e*t^3", N=8)}
    assert stratum_check(X, xbar, 2) is None
    rep = lift_stratum_point(X, xbar, 2, 8)
    assert rep.ok and rep.precision == 1
    lifted = rep.extra["arc"]
    assert all(evaluate_on_arc(f, lifted).is_zero() for f in X.equations)
    digits, consistent, unique = lift_oracle(X, xbar, 2, 8)
    assert consistent and unique
    assert OracleRing.tps_digits(rep.solution[0]) == digits[0]
    assert rep.solution[0] == series("-e", N=1)


def test_lift_obstruction():
    xbar = {"x": series("t"), "y": series("t^2"), "z": series("0")}
    assert stratum_check(X, xbar, 1) is None
    rep = lift_stratum_point(X, xbar, 1, 6)
    assert not rep.ok and rep.obstruction
    assert lift_oracle(X, xbar, 1, 6)[1] is False


def test_lift_rejects_bad_input():
    with pytest.raises(InvalidPoint):
        lift_stratum_point(X, {"x": series("t"), "y": series("1"), "z": series("0")}, 1)
    with pytest.raises(ContextError):
        lift_stratum_point(X, {v: series("t^2", N=8) for v in "xyz"}, 2, 7)
    with pytest.raises(ContextError):
        lift_stratum_point(X, {v: series("t^2", N=8) for v in "xyz"}, 2, 9)


def test_lift_report_text():
    rep = lift_stratum_point(X, {v: series("t^2", N=8) for v in "xyz"}, 2, 8)
    text = rep.to_text()
    assert text.splitlines()[:4] == ["status: ok", "iterations: 1", "certified: mod t^1", "residual_zero: true"]
    assert "arc x: t^2 + O(t^8)" in text


def lift_instances(count, seed=0):
    rng = random.Random(seed)
    for i in range(count):
        field = [QQ, GF(2), GF(3)][i % 3]
        T = TestRingSpec(("a", "b")[: rng.randint(1, 2)], rng.randint(2, 3), field)
        d = rng.randint(0, 2)
        N = rng.randint(3 * d + 2, 3 * d + 4)
        xbar, arc = stratum_sample(rng, T, d, N)
        yield T, d, N, xbar, arc


@pytest.mark.parametrize("seed", range(5))
def test_lift_matches_oracle(seed):
    for T, d, N, xbar, arc in lift_instances(6, seed):
        rep = lift_stratum_point(X if T.field == QQ else quadric_cone(T.field), xbar, d, N)
        assert rep.ok, rep.obstruction
        Xf = X if T.field == QQ else quadric_cone(T.field)
        digits, consistent, unique = lift_oracle(Xf, xbar, d, N)
        assert consistent and unique
        assert OracleRing.tps_digits(rep.solution[0]) == digits[0]
        lifted = rep.extra["arc"]
        assert all(evaluate_on_arc(f, lifted).is_zero() for f in Xf.equations)
        again = lift_stratum_point(Xf, lifted, d, N)
        assert again.ok and all(s.is_zero() for s in again.solution)


# -- N and N_1 --------------------------------------------------------------
def test_roundtrip_base_arc():
    x = {"x": series("t^2", N=8), "y": series("0", N=8), "z": series("0", N=8)}
    rep = n_to_n1_roundtrip(X, x, [series("0", N=8)])
    assert rep.ok and rep.forward
    assert all(s.is_zero() for s in rep.recovered)


def test_roundtrip_deformation_with_oracle():
    rng = random.Random(7)
    N = 9
    for _ in range(5):
        p, r, s = (random_series(rng, EPS, N, spread=2) for _ in range(3))
        e = Tps.constant(EPS.gen("e"), N, EPS.ring)
        t = Tps.monomial(EPS.ring, 1, N)
        x = {"x": series("t^2", N=N) + e * p * t ** 3, "y": e * r * t ** 5, "z": e * s * t ** 4}
        digits, determined = n_oracle(X, x, N)
        assert digits is not None
        nu = Tps.from_coeffs(EPS.ring, [_element(dg) for dg in digits[0]], N)
        rep = n_to_n1_roundtrip(X, x, [nu])
        assert rep.ok
        keep = min(rep.precision, determined)
        assert keep >= 1
        assert OracleRing.tps_digits(rep.recovered[0], keep) == digits[0][:keep]


def _element(digit):
    R = EPS.ring
    out = R.zero
    for (k,), v in digit.items():
        out = out + R.gen("e") ** k * v
    return out


def test_roundtrip_forward_on_random_points():
    rng = random.Random(11)
    for i in range(100):
        T = TestRingSpec(("a",), rng.randint(1, 2), [QQ, GF(3)][i % 2])
        e = rng.randint(0, 1)
        N = rng.randint(2 * e + 3, 2 * e + 5)
        x, nu = n_point(rng, T, e, N)
        Xf = X if T.field == QQ else quadric_cone(T.field)
        rep = n_to_n1_roundtrip(Xf, x, nu)
        assert rep.forward
        if rep.obstruction is None:
            assert rep.reverse_equal


def test_roundtrip_rejects_non_points():
    x = {"x": series("t^2"), "y": series("1"), "z": series("0")}
    with pytest.raises(InvalidPoint):
        n_to_n1_roundtrip(X, x, [series("0")])


# -- injectivity of multiplication by a non-degenerate series --------------
def _f2_series_all(T, N):
    elems = [sum((b * c for b, c in zip(T.basis(), bits)), T.ring.zero)
             for bits in itertools.product(range(2), repeat=T.dimension())]
    for coeffs in itertools.product(elems, repeat=N):
        yield Tps.from_coeffs(T.ring, list(coeffs), N)


@pytest.mark.parametrize("M", [1, 2])
def test_injectivity_enumerated_over_f2(M):
    T = TestRingSpec(("a",), M, GF(2))
    N = 4
    xs = [series("t", T, N), series("t + a", T, N), series("1 + a*t", T, N), series("t^2 + a*t + a", T, N)]
    for x in xs:
        order = weierstrass_degree(x)
        keep = N - M * order
        zeros = 0
        for w in _f2_series_all(T, N):
            if (x * w).is_zero():
                zeros += 1
                assert w.truncate(max(keep, 0)).is_zero()
        if order == 0:
            assert zeros == 1
    # the bound N - M*order is attained: (t + a)(t^3 - a t^2) = t^4
    w = series("t^3 + a*t^2", T, N)
    if M == 2:
        assert (xs[1] * w).is_zero() and not w.truncate(N - 1).is_zero()


@pytest.mark.parametrize("seed", range(30))
def test_injectivity_kernel_oracle(seed):
    rng = random.Random(seed)
    field = [QQ, GF(2), GF(3)][seed % 3]
    T = TestRingSpec(("a", "b")[: rng.randint(1, 2)], rng.randint(1, 3), field)
    N = rng.randint(2, 6)
    order = rng.randint(0, min(2, N - 1))
    coeffs = [random_element(rng, T, nilpotent=True) for _ in range(order)]
    coeffs.append(random_element(rng, T, unit=True))
    coeffs += [random_element(rng, T) for _ in range(N - order - 1)]
    x = Tps.from_coeffs(T.ring, coeffs, N)
    keep = max(N - T.M * order, 0)
    for w in multiplication_kernel(T, x):
        assert all(not w[k] for k in range(keep))
