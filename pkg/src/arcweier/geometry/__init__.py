"""Presentations of jet schemes, strata and the auxiliary schemes of the decomposition."""

from .arcs import (
    N2dSystem,
    evaluate_on_arc,
    jet_presentation,
    n1_presentation,
    n2d_presentation,
    n2d_system,
    s_d_presentation,
    stratum_presentation,
    symbolic_arc,
    taylor_split,
)
from .local import ChartReport, RankResult, rank_at_point, singular_locus, smooth_chart_product_check
from .presentation import SchemePresentation, VarTag
from .variety import SpecialCI, parse_variety, quadric_cone

__all__ = [
    "SchemePresentation", "VarTag", "SpecialCI", "parse_variety", "quadric_cone",
    "symbolic_arc", "evaluate_on_arc", "jet_presentation", "stratum_presentation",
    "n1_presentation", "taylor_split", "N2dSystem", "n2d_system", "n2d_presentation",
    "s_d_presentation", "singular_locus", "rank_at_point", "RankResult",
    "smooth_chart_product_check", "ChartReport",
]
