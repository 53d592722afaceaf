"""Exact arithmetic kernel for polynomials and truncated series over test rings."""

from .field import GF, QQ, Field
from .jacobian import JacobianData, adjugate, determinant, jacobian_package
from .poly import Poly, PolyRing, parse_poly
from .series import Tps, t_order, tpoly_divmod, tps_invert, tps_mul
from .taylor import taylor_expand
from .testring import TestRingSpec, field_ring


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """``op`` is one of ``add``, ``sub``, ``mul``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "Field", "GF", "QQ", "Poly", "PolyRing", "parse_poly", "poly_arith",
    "TestRingSpec", "field_ring", "Tps", "tps_mul", "tps_invert", "t_order", "tpoly_divmod",
    "JacobianData", "jacobian_package", "adjugate", "determinant", "taylor_expand",
]
