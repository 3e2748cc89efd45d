"""Exact origami constructions in R^n: points built from 0 and 1 by
intersecting lines with prescribed directions."""
from .construction import GenerationConfig, GenerationState, cube, generate, generate_reference
from .geometry import Direction, canonicalize_direction, intersect, intersect_complex, line_relation
from .lattice import (
    DenseEvidence,
    LatticeBasis,
    LatticeVerdict,
    UnknownVerdict,
    angles_for_lattice,
    hnf_canonicalize,
    lattice_hypothesis_test,
    member,
    structural_scan,
    verify_closure_table,
)
from .quaternion import Quaternion, order_table, quat_intersect
from .scalar import ETA, RationalFunction

__all__ = [
    "DenseEvidence",
    "Direction",
    "ETA",
    "GenerationConfig",
    "GenerationState",
    "LatticeBasis",
    "LatticeVerdict",
    "Quaternion",
    "RationalFunction",
    "UnknownVerdict",
    "angles_for_lattice",
    "canonicalize_direction",
    "cube",
    "generate",
    "generate_reference",
    "hnf_canonicalize",
    "intersect",
    "intersect_complex",
    "lattice_hypothesis_test",
    "line_relation",
    "member",
    "order_table",
    "quat_intersect",
    "structural_scan",
    "verify_closure_table",
]
