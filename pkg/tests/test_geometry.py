import pytest

from arcweier.algebra import GF, QQ, PolyRing, TestRingSpec, Tps, parse_poly
from arcweier.errors import ContextError, InvalidPoint, ParseError
from arcweier.geometry import (
    SchemePresentation, SpecialCI, VarTag, jet_presentation, n1_presentation, n2d_presentation, n2d_system,
    parse_variety, quadric_cone, rank_at_point, s_d_presentation, singular_locus, smooth_chart_product_check,
    stratum_presentation, taylor_split,
)
from arcweier.geometry.arcs import evaluate_on_arc
from arcweier.verify.counting import count_points, solutions
from arcweier.verify.models import builtin_models
from arcweier.verify.samples import n2d_sample, random_series
from arcweier.weierstrass import BoundedPoly, MonicPoly

from oracles import brute_force_count

X = quadric_cone()
QUADRIC_TEXT = "ci 3 1\nvars: x y z\ny-vars: y\nx*y - z^2\n"


def eqs(P):
    return [str(e) for e in P.equations]


# -- variety files ----------------------------------------------------------
def test_parse_variety_ci():
    V = parse_variety("# the cone\n" + QUADRIC_TEXT)
    assert isinstance(V, SpecialCI)
    assert V.variables == ("x", "y", "z") and V.y_vars == ("y",)
    assert eqs(V) == ["x*y - z^2"]


def test_parse_variety_affine_and_field():
    V = parse_variety("affine 2 1\nvars: x y\nfield: GF(3)\nx*y - 1\n")
    assert isinstance(V, SchemePresentation)
    assert V.field == GF(3)
    assert count_points(V, 3).count == 2


@pytest.mark.parametrize("text, line, column", [
    ("ci 3\n", 1, 1),
    ("ci 3 1\nvars: x y z\ny-vars: y\nx*y - z^^2\n", 4, 9),
    ("ci 3 1\nvars: x y z\ny-vars: y\n  x*y + w\n", 4, 9),
    ("ci 3 1\nvars: x y z\ncolour: red\n", 3, 1),
])
def test_parse_variety_errors(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_variety(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_parse_variety_count_mismatch():
    with pytest.raises(ParseError):
        parse_variety("ci 3 2\nvars: x y z\ny-vars: y z\nx*y - z^2\n")


def test_special_ci_validation():
    with pytest.raises(ContextError):
        SpecialCI.from_strings(("x", "y"), ("y", "x"), ["x*y"])
    with pytest.raises(ContextError):
        SpecialCI.from_strings(("x", "y"), ("w",), ["x*y"])


# -- presentations ----------------------------------------------------------
def test_presentation_text_round_trip():
    for P in [jet_presentation(X, 2), stratum_presentation(X, 1), n1_presentation(X, 3, 1),
              s_d_presentation(1, 1, 2), n2d_presentation(X, 1, 4), builtin_models()[1].Y]:
        again = SchemePresentation.from_text(P.to_text())
        assert again == P
        assert again.to_text() == P.to_text()


def test_presentation_parse_errors():
    good = stratum_presentation(X, 0).to_text()
    bad = good.replace("eq f1[t^0]: x_0*y_0 - z_0^2", "eq f1[t^0]: x_0*y_0 - q_0^2")
    with pytest.raises(ParseError) as err:
        SchemePresentation.from_text(bad)
    assert err.value.line == 8 and err.value.column == 23
    with pytest.raises(ParseError):
        SchemePresentation.from_text(good + "eq extra: x_0\n")
    with pytest.raises(ParseError):
        SchemePresentation.from_text("presentation: p\nwhatever\nend\n")


def test_presentation_points_and_fiber():
    P = stratum_presentation(X, 0)
    assert P.is_point({"x_0": 1, "y_0": 4, "z_0": 2})
    assert not P.is_point({"x_0": 0, "y_0": 0, "z_0": 0})
    F = P.fiber({"x_0": 1})
    assert F.variables == ("y_0", "z_0")
    assert eqs(F) == ["-z_0^2 + y_0"]
    with pytest.raises(ContextError):
        P.is_point({"x_0": 1})


def test_presentation_points_over_test_ring():
    T = TestRingSpec(("e",), 2, QQ)
    e = T.gen("e")
    P = stratum_presentation(X, 0)
    assert P.is_point({"x_0": 1 + e, "y_0": T.ring.zero, "z_0": e}, T.ring.one)
    assert not P.is_point({"x_0": e, "y_0": T.ring.zero, "z_0": T.ring.zero}, T.ring.one)


def test_presentation_validation():
    R = PolyRing(("x",), QQ)
    with pytest.raises(ContextError):
        SchemePresentation("p", R, [], [], [])
    with pytest.raises(ContextError):
        SchemePresentation("p", R, [VarTag("x")], [R.gen("x")], [])


# -- jets -------------------------------------------------------------------
def test_jets_of_quadric():
    assert eqs(jet_presentation(X, 0)) == ["x_0*y_0 - z_0^2"]
    assert eqs(jet_presentation(X, 1)) == ["x_0*y_0 - z_0^2", "x_0*y_1 + x_1*y_0 - 2*z_0*z_1"]
    J2 = jet_presentation(X, 2)
    assert J2.equations[2] == parse_poly("x_0*y_2 + x_1*y_1 + x_2*y_0 - 2*z_0*z_2 - z_1^2", J2.ring)
    assert not J2.inverted
    assert [t.exponent for t in J2.tags[:3]] == [0, 1, 2]


@pytest.mark.parametrize("q, j", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_jet_truncation_compatibility(q, j):
    Xq = quadric_cone(GF(q))
    J = jet_presentation(Xq, j)
    rows = solutions(J, q)
    for i in range(j):
        Ji = jet_presentation(Xq, i)
        cols = [J.variables.index(v) for v in Ji.variables]
        for row in rows:
            assert Ji.is_point({v: int(row[c]) for v, c in zip(Ji.variables, cols)})


def test_jet_counts_match_brute_force():
    for j in (0, 1, 2):
        J = jet_presentation(X, j)
        assert count_points(J, 3).count == brute_force_count(J, 3)


# -- strata -----------------------------------------------------------------
def test_stratum_d0():
    D0 = stratum_presentation(X, 0)
    assert D0.variables == ("x_0", "y_0", "z_0")
    assert eqs(D0) == ["x_0*y_0 - z_0^2"]
    assert [str(p) for p in D0.inverted] == ["x_0"]
    assert count_points(D0, 3).count == 6 == brute_force_count(D0, 3)


def test_stratum_d1():
    D1 = stratum_presentation(X, 1)
    assert len(D1.variables) == 9
    J2 = jet_presentation(X, 2)
    assert list(D1.equations[:3]) == [e.to_ring(D1.ring) for e in J2.equations]
    assert eqs(D1)[3] == "x_0"
    assert [str(p) for p in D1.inverted] == ["x_1"]
    assert count_points(D1, 3).count == brute_force_count(D1, 3) == 162


def test_stratum_inverted_is_psi_at_level_zero():
    V = SpecialCI.from_strings(("x", "y"), ("y",), ["y^2 - x^3"])
    P = stratum_presentation(V, 0)
    assert [str(p) for p in P.inverted] == ["2*y_0"]


# -- N_1 --------------------------------------------------------------------
def test_n1_shape_and_base_point():
    P = n1_presentation(X, 3)
    assert len(P.equations) == X.n * 3
    Pd = n1_presentation(X, 3, d=1)
    assert len(Pd.equations) == X.n * 3 + 1 and len(Pd.inverted) == 1
    point = {v: 0 for v in Pd.variables}
    point["x_2"] = 1
    assert P.is_point(point)
    assert not Pd.is_point(point)  # psi = t^2 has order 2, not 1
    point2 = {v: 0 for v in Pd.variables}
    point2["x_1"] = 1
    assert Pd.is_point(point2)


# -- Taylor split -----------------------------------------------------------
def test_taylor_split_identity_map():
    R = PolyRing(("x0", "x1", "s0", "s1", "s2"), QQ)
    P = PolyRing(("x",), QQ)
    q = MonicPoly((R.zero,))
    xbar = [BoundedPoly((R.gen("x0"), R.gen("x1")))]
    xi = [Tps.from_coeffs(R, [R.gen("s0"), R.gen("s1"), R.gen("s2")], 3)]
    bars, primes = taylor_split([P.gen("x")], q, xbar, xi, 3)
    assert bars[0] == xbar[0] and primes[0] == xi[0]


def test_taylor_split_square_with_q_equal_one():
    """q of degree 0: split modulo t, so gbar = x0^2 and g' = 2 x0 xi + t xi^2 + (t-part of xbar^2)/t."""
    R = PolyRing(("x0", "s0", "s1", "s2"), QQ)
    P = PolyRing(("x",), QQ)
    q = MonicPoly(())
    xbar = [BoundedPoly((R.gen("x0"),))]
    xi = Tps.from_coeffs(R, [R.gen("s0"), R.gen("s1"), R.gen("s2")], 3)
    bars, primes = taylor_split([P.gen("x") ** 2], q, xbar, [xi], 3)
    x0 = Tps.constant(R.gen("x0"), 3, R)
    assert bars[0].coeffs == (R.gen("x0") ** 2,)
    assert primes[0] == 2 * x0 * xi + (xi * xi).shift_up(1)


def test_taylor_split_random_reassembly(rng):
    T = TestRingSpec(("a",), 2, QQ)
    R = T.ring
    P = PolyRing(("x", "y", "t"), QQ)
    g = [parse_poly("x*y - t*x^2 + y^3", P), parse_poly("t^2*y + 1", P)]
    from arcweier.verify.samples import random_element

    for _ in range(10):
        d = rng.randint(0, 2)
        N = rng.randint(d + 2, 6)
        q = MonicPoly(tuple(random_element(rng, T, nilpotent=True) for _ in range(d)))
        xbar = [BoundedPoly(tuple(random_element(rng, T) for _ in range(d + 1))) for _ in range(2)]
        xi = [random_series(rng, T, N) for _ in range(2)]
        bars, primes = taylor_split(g, q, xbar, xi, N, ("x", "y"))
        tq = Tps.from_coeffs(R, [R.zero] + q.full_coeffs(R), N)
        vals = {"x": xbar[0].to_tps(N, R) + tq * xi[0], "y": xbar[1].to_tps(N, R) + tq * xi[1]}
        for p, b, pr in zip(g, bars, primes):
            assert b.bound == d + 1
            assert evaluate_on_arc(p, vals) == b.to_tps(N, R) + tq * pr


# -- N_{2,d} ----------------------------------------------------------------
def _evaluate_series(series, assignment, one):
    return [c.evaluate(assignment, one) for c in series.coeffs]


def test_n2d_shape():
    P = n2d_presentation(X, 1, 4)
    assert len(P.variables) == 23
    assert len(P.equations) == 8
    assert set(P.block("finite")) == {"q_0", "u_0", "xbar_0", "xbar_1", "ybar_0", "ybar_1", "zbar_0", "zbar_1"}
    assert [str(p) for p in P.inverted] == ["u_0"]


def test_n2d_samples_reassemble(rng):
    T = TestRingSpec(("e",), 2, QQ)
    system = n2d_system(X, 1, 4)
    P = n2d_presentation(X, 1, 4)
    for _ in range(10):
        s = n2d_sample(rng, T, 0, 4)
        assert s["d"] == 1
        a = system.assignment(s["q"], s["u"], s["xbar"], s["xi"], s["nu"])
        one = T.ring.one
        assert P.is_point(a, one)
        for series in system.eq4 + (system.eq8,):
            assert all(not v.terms for v in _evaluate_series(series, a, one))


def test_n2d_base_arc_d1():
    P = n2d_presentation(X, 1, 4)
    point = {v: 0 for v in P.variables}
    point.update({"u_0": 1, "xbar_0": 1})
    assert P.is_point(point)


def test_n2d_base_arc_t_squared():
    """gamma = (t^2, 0, 0) has c = t x^2 = t^5, so it lives on N_{2,5} with q = t^5, u = 1."""
    d, N = 5, 12
    P = n2d_presentation(X, d, N)
    point = {v: 0 for v in P.variables}
    point.update({"u_0": 1, "xbar_2": 1})
    assert P.is_point(point)


def test_n2d_rejects_bad_parameters():
    with pytest.raises(ValueError):
        n2d_presentation(X, 0, 4)
    with pytest.raises(ValueError):
        n2d_presentation(X, 2, 5)


# -- S_d --------------------------------------------------------------------
def test_s1_equations():
    S = s_d_presentation(1, 1, 2)
    assert eqs(S) == ["a*xi_0 + v", "a*xi_1 + xi_0", "a*xi_2 + xi_1"]


def test_s1_fibers_over_f3():
    S = s_d_presentation(1, 1, 2, GF(3))
    one = S.fiber({"a": 1})
    rows = solutions(one, 3)
    v = one.variables.index("v")
    assert len(rows) == 3 and sorted(int(r[v]) for r in rows) == [0, 1, 2]
    zero = S.fiber({"a": 0})
    rows = solutions(zero, 3)
    v = zero.variables.index("v")
    assert len(rows) == 3 and all(int(r[v]) == 0 for r in rows)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("K", [1, 2, 3])
def test_s1_fiber_structure(p, K):
    S = s_d_presentation(1, 1, K, GF(p))
    for a in range(p):
        F = S.fiber({"a": a})
        rows = solutions(F, p)
        assert len(rows) == p
        if a == 0:
            forced = [F.variables.index(v) for v in ["v"] + [f"xi_{k}" for k in range(K)]]
            assert all(int(r[c]) == 0 for r in rows for c in forced)
        else:
            last = F.variables.index(f"xi_{K}")
            assert sorted(int(r[last]) for r in rows) == list(range(p))


def test_s2_shape():
    S = s_d_presentation(2, 1, 2)
    assert S.variables == ("a_0", "a_1", "v_0", "v_1", "xi_0", "xi_1", "xi_2")
    assert eqs(S)[2] == "a_0*xi_2 + a_1*xi_1 + xi_0"


# -- local checks -----------------------------------------------------------
def test_singular_locus_examples():
    assert str(singular_locus(X)) == "x"
    assert str(singular_locus(SpecialCI.from_strings(("x", "y"), ("y",), ["y - x^2 - 1"]))) == "1"
    assert str(singular_locus(SpecialCI.from_strings(("x", "y"), ("y",), ["y^2 - x^3"]))) == "2*y"


def test_rank_examples():
    Y1, Y2 = (M.Y for M in builtin_models())
    r = rank_at_point(Y2, {"a": 1, "b": 0, "v": 0, "w": 0})
    assert r.rank == 0 and not r.certified_smooth and r.verdict() == "not certified smooth"
    r = rank_at_point(Y2, {"a": 1, "b": 2, "v": 1, "w": 1})
    assert r.rank == 2 and r.certified_smooth
    assert rank_at_point(Y1, {"a": 0, "v": 0}).rank == 0
    with pytest.raises(InvalidPoint):
        rank_at_point(Y2, {"a": 1, "b": 0, "v": 1, "w": 0})


def test_chart_affine_line():
    R = PolyRing(("x",), GF(3))
    A1 = SchemePresentation("A1", R, [VarTag("x")], [], [])
    rep = smooth_chart_product_check(A1, ["x"], 2, 3)
    assert rep.ok and set(rep.fibers.values()) == {9} and len(rep.fibers) == 3


def test_chart_hyperbola():
    H = parse_variety("affine 2 1\nvars: x y\nfield: GF(3)\nx*y - 1\n")
    rep = smooth_chart_product_check(H, ["x"], 1, 3)
    assert rep.ok and len(rep.fibers) == 2 and set(rep.fibers.values()) == {3}


def _cone_off_vertex(field):
    R = PolyRing(("x", "y", "z"), field)
    return SchemePresentation("cone, x invertible", R, [VarTag(v) for v in "xyz"],
                              [parse_poly("x*y - z^2", R)], ["f"], [R.gen("x")], ["x"])


def test_chart_cone_off_vertex():
    rep = smooth_chart_product_check(_cone_off_vertex(GF(3)), ["x", "z"], 1, 3)
    assert rep.ok and len(rep.fibers) == 6 and set(rep.fibers.values()) == {9}


def test_chart_over_gf4():
    rep = smooth_chart_product_check(_cone_off_vertex(GF(2)), ["x", "z"], 1, 4)
    assert rep.ok and len(rep.fibers) == 12 and set(rep.fibers.values()) == {16}


def test_chart_reports_singular_points():
    cone = parse_variety("affine 3 1\nvars: x y z\nfield: GF(3)\nx*y - z^2\n")
    rep = smooth_chart_product_check(cone, ["x", "z"], 1, 3)
    assert not rep.ok
    assert ("0", "0", "0") in rep.not_smooth
