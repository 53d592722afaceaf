"""Finite models of arcs and the enumeration checks that test them."""

from .checks import CensusReport, CounterexampleReport, DeskReport, census, counterexample_check, formal_iso_desk_check
from .counting import CountResult, FiniteField, count_points, evaluate_codes, finite_field, solutions
from .models import ArcResult, GoldenModel, builtin_models, golden_model, model_equations, model_map_eval
from .report import CheckRecord, check, render
from .suite import run_suite

__all__ = [
    "FiniteField", "finite_field", "CountResult", "count_points", "solutions", "evaluate_codes",
    "GoldenModel", "golden_model", "builtin_models", "model_equations", "model_map_eval", "ArcResult",
    "DeskReport", "formal_iso_desk_check", "CounterexampleReport", "counterexample_check",
    "CensusReport", "census", "CheckRecord", "check", "render", "run_suite",
]
