"""Exact geometry of block-design parameter points (v, b, r, k, lambda)."""

from .automorphisms import C, IDENTITY, M, N, AffineElement, apply, canonicalize, line_image, plane_permutation
from .enumeration import bundled_catalog, integer_points, load_catalog
from .families import FamilyTag, classify
from .lines import Family, LinearRelation, Line, flat_points, lines_through, relation_on_line, table_v_propagation
from .pseudo import MultiplicityFunction, gj_conditions, solve, verify
from .sieve import Outcome, Verdict, brc, hall_connor, pell_solutions, sieve_point, ternary_solvable, wilson_t7
from .variety import (
    DesignError,
    DesignPoint,
    NotOnVarietyError,
    PlaneId,
    is_bumpy,
    is_flat,
    on_variety,
    plane_intersection,
    planes_containing,
    q_value,
)

__all__ = [
    "AffineElement", "C", "IDENTITY", "M", "N", "apply", "canonicalize", "line_image", "plane_permutation",
    "bundled_catalog", "integer_points", "load_catalog", "FamilyTag", "classify",
    "Family", "LinearRelation", "Line", "flat_points", "lines_through", "relation_on_line", "table_v_propagation",
    "MultiplicityFunction", "gj_conditions", "solve", "verify",
    "Outcome", "Verdict", "brc", "hall_connor", "pell_solutions", "sieve_point", "ternary_solvable", "wilson_t7",
    "DesignError", "DesignPoint", "NotOnVarietyError", "PlaneId", "is_bumpy", "is_flat", "on_variety",
    "plane_intersection", "planes_containing", "q_value",
]
