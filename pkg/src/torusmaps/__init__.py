"""Maps on the torus with equilateral cone metrics: exact holonomy,
Burgers vectors, exhaustive enumeration and non-toroidality certificates."""

from torusmaps.cone_metric import FAMILIES, FamilyMismatchError, cone_points, degree_profiles, get_family
from torusmaps.constructions import catalogue, flip_edge, lattice_quotient, refine
from torusmaps.enumeration import EnumSpec, enumerate_maps
from torusmaps.holonomy import (
    DualLoop,
    develop,
    develop_walk,
    fundamental_pair_holonomy,
    holonomy_group,
    loop_holonomy,
    translation_lattice,
)
from torusmaps.lattice import LatticeMotion, LatticePoint
from torusmaps.surface_map import SurfaceMap, canonical_form, classify_surface, parse_map, serialize_map, two_colorings

__all__ = [
    "FAMILIES", "FamilyMismatchError", "cone_points", "degree_profiles", "get_family",
    "catalogue", "flip_edge", "lattice_quotient", "refine",
    "EnumSpec", "enumerate_maps",
    "DualLoop", "develop", "develop_walk", "fundamental_pair_holonomy", "holonomy_group",
    "loop_holonomy", "translation_lattice",
    "LatticeMotion", "LatticePoint",
    "SurfaceMap", "canonical_form", "classify_surface", "parse_map", "serialize_map", "two_colorings",
]
