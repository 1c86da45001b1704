"""Exact construction and checking of laminates supported on rank-one cubes in 2x2 matrices."""
from .mat2 import Mat2, Vec2, cof, det, inner, is_rank_one, tensor
from .periodic import (PeriodicDeformation, SawtoothMode, SignPatternMeasure, correlation_integral,
                       exact_weights, mc_weights, sawtooth, sawtooth_slope, support_points)
from .measures import (AtomicMeasure, Leaf, MeasureForest, Split, SplittingTree, barycenter, flatten,
                       is_symmetric, jensen_check, pc_constraints_check, symmetric_from_partial, validate_tree)
from .hulls import (RankOneSquare, RuledSurfacePatch, classify, hyperboloid_center, pairing, pc_membership,
                    ray_surface_intersections, square_pc_check, surface_point)
from .cube import (CubeFrame, LaminateCertificate, build_frame, case1_laminate, case2_laminate,
                   degenerate_laminate, lemma_p, symmetric_laminate, uniform_laminate, witness_origin)
from .verify import TestFunction, battery, check_inequality, main_theorem_suite, roc_sampled

__version__ = "0.1.0"

__all__ = [
    "Mat2",
    "Vec2",
    "cof",
    "det",
    "inner",
    "is_rank_one",
    "tensor",
    "PeriodicDeformation",
    "SawtoothMode",
    "SignPatternMeasure",
    "correlation_integral",
    "exact_weights",
    "mc_weights",
    "sawtooth",
    "sawtooth_slope",
    "support_points",
    "AtomicMeasure",
    "Leaf",
    "MeasureForest",
    "Split",
    "SplittingTree",
    "barycenter",
    "flatten",
    "is_symmetric",
    "jensen_check",
    "pc_constraints_check",
    "symmetric_from_partial",
    "validate_tree",
    "RankOneSquare",
    "RuledSurfacePatch",
    "classify",
    "hyperboloid_center",
    "pairing",
    "pc_membership",
    "ray_surface_intersections",
    "square_pc_check",
    "surface_point",
    "CubeFrame",
    "LaminateCertificate",
    "build_frame",
    "case1_laminate",
    "case2_laminate",
    "degenerate_laminate",
    "lemma_p",
    "symmetric_laminate",
    "uniform_laminate",
    "witness_origin",
    "TestFunction",
    "battery",
    "check_inequality",
    "main_theorem_suite",
    "roc_sampled",
]
