"""Named verification suites; each returns a list of check records."""

from __future__ import annotations

import random

from ..algebra.field import GF, QQ
from ..algebra.testring import TestRingSpec
from ..geometry.arcs import s_d_presentation, stratum_presentation
from ..geometry.variety import quadric_cone
from ..lifting import lift_stratum_point, tadic_fixed_point
from ..weierstrass import weierstrass_divide, weierstrass_prepare
from .checks import census, counterexample_check, formal_iso_desk_check
from .counting import count_points, solutions
from .models import builtin_models
from .report import CheckRecord, check
from .samples import division_instance, fixed_point_instance, stratum_sample

GOLDEN = {"Y_1": ["v^2"], "Y_2": ["a*w^2 - v^2", "b*w^2 - 2*v*w"]}


def models_suite() -> list[CheckRecord]:
    out = []
    for M in builtin_models():
        out.append(check(f"{M.name} equations", GOLDEN[M.name], [str(e) for e in M.Y.equations]))
        out.append(check(f"{M.name} base point", True, M.Y.is_point(M.base_point)))
    return out


def counterexample_suite() -> list[CheckRecord]:
    rep = counterexample_check()
    out = [check("Y_2 rank at (1,0,0,0)", 0, rep.model_rank)]
    out.append(check("image arc", "(1 + t^2, 0, 0)",
                     f"({str(rep.image_arc['x']).split(' + O(')[0]}, 0, 0)"
                     if rep.image_arc["y"].is_zero() and rep.image_arc["z"].is_zero() else "other"))
    for j, r in rep.jet_ranks.items():
        out.append(check("jet Jacobian rank", rep.jet_expected[j], r, j=j))
    return out


def strata_suite(workers: int = 1) -> list[CheckRecord]:
    X = quadric_cone()
    out = [check("|D_0(F_3)|", 6, count_points(stratum_presentation(X, 0), 3, workers=workers).count)]
    rep = census(X, 3, workers=workers)
    out.append(check("census partition", rep.total, sum(rep.by_order.values()) + rep.residual, q=3, level=rep.level))
    for d in rep.by_order:
        out.append(check("psi-order count", rep.expected_by_order[d], rep.by_order[d], d=d))
    S = s_d_presentation(1, 1, 2)
    for a, expected_v in ((1, [0, 1, 2]), (0, [0])):
        F = S.fiber({"a": a})
        sols = solutions(F, 3)
        vcol = F.variables.index("v")
        out.append(check("S_1 fibre size", 3, len(sols), a=a, K=2))
        out.append(check("S_1 fibre v-values", expected_v, sorted({int(r[vcol]) for r in sols}), a=a, K=2))
    return out


def desk_suite() -> list[CheckRecord]:
    out = []
    T = TestRingSpec(("e",), 2, GF(2))
    for M, N in zip(builtin_models(GF(2)), (4, 5)):
        rep = formal_iso_desk_check(M, T, N)
        out.append(check(f"{M.name} deformation count", rep.x_side, rep.model_side, N=N))
        out.append(check(f"{M.name} bijection", True, rep.ok, N=N))
    return out


def random_suite(seed: int = 0, count: int = 30) -> list[CheckRecord]:
    rng = random.Random(seed)
    div_ok = prep_ok = fp_ok = lift_ok = 0
    for _ in range(count):
        T, f, g, n = division_instance(rng)
        res = weierstrass_divide(f, g)
        div_ok += res.check(f, g) and res.remainder.bound == n
        q, v = weierstrass_prepare(f)
        prep_ok += q.to_tps(f.N, f.ring) * v == f and q.lower_in_ideal()
        T, h, variables, nu1 = fixed_point_instance(rng)
        fp_ok += tadic_fixed_point(h, nu1, variables).residual_zero
        d = rng.randint(0, 1)
        xbar, _ = stratum_sample(rng, TestRingSpec(("a",), 2, QQ), d, 3 * d + 2 + rng.randint(0, 2))
        lift_ok += lift_stratum_point(quadric_cone(), xbar, d).ok
    return [
        check("Weierstrass division identity", count, div_ok, seed=seed),
        check("Weierstrass preparation identity", count, prep_ok, seed=seed),
        check("fixed point residual", count, fp_ok, seed=seed),
        check("stratum lift residual", count, lift_ok, seed=seed),
    ]


SUITES = {
    "models": lambda seed, workers: models_suite(),
    "counterexample": lambda seed, workers: counterexample_suite(),
    "strata": lambda seed, workers: strata_suite(workers),
    "desk": lambda seed, workers: desk_suite(),
    "random": lambda seed, workers: random_suite(seed),
}


def run_suite(name: str, seed: int = 0, workers: int = 1) -> list[CheckRecord]:
    if name == "all":
        out = []
        for key in SUITES:
            out += SUITES[key](seed, workers)
        return out
    return SUITES[name](seed, workers)
