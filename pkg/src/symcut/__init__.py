"""Symplectic cuts by non-abelian groups: exact polyhedral combinatorics and matrix-geometry checks."""
from .coxvinberg import (
    delzant_moment_image,
    delzant_sequence,
    extended_cone,
    kirwan_cut,
    phi_beta_extends,
    vinberg_cone,
    vinberg_lattice_member,
)
from .polyhedra import (
    EmptyPolyhedron,
    LabeledPolyhedron,
    admissibility_13,
    intersect,
    is_delzant,
    is_outward_positive,
    is_simple,
    is_universal,
    stacky_normal_fan,
    w_invariant_extension,
)
from .rootsys import RootDatum, build_root_datum

__all__ = [
    "RootDatum",
    "build_root_datum",
    "LabeledPolyhedron",
    "EmptyPolyhedron",
    "is_simple",
    "is_outward_positive",
    "is_universal",
    "admissibility_13",
    "w_invariant_extension",
    "stacky_normal_fan",
    "intersect",
    "is_delzant",
    "delzant_sequence",
    "delzant_moment_image",
    "vinberg_cone",
    "extended_cone",
    "phi_beta_extends",
    "vinberg_lattice_member",
    "kirwan_cut",
]
__version__ = "0.1.0"
