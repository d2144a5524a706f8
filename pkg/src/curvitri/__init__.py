"""Side-to-side tilings of the sphere by congruent curvilinear triangles.

Submodules
----------
maps        combinatorial maps, canonical codes, triangulation enumeration
prototile   side labels and the sixteen admissible triangles
verify      labelled tilings, matching and angle checks
avc         vertex types, fans and the vertex table
families    generators for every tiling family, and modifications
enumerate   exhaustive search and classification
document    JSON documents; render: SVG/DOT drawings; cli: command line
"""

from .maps import CombMap, build_map, canonical_code, enumerate_triangulations
from .prototile import Prototile, SideLabel, by_name, catalog16, equivalent, is_admissible, reflect
from .verify import LabeledTiling, verify_tiling, vertex_spectrum
from .avc import admissible_vertices, derive_avc_table, fan_decompose, solve_f_for_case
from .families import FamilySpec, generate, atlas
from .enumerate import SearchConfig, avc_constrained_search, classify, enumerate_labelings, enumerate_tilings

__version__ = "0.1.0"

__all__ = [
    "CombMap", "build_map", "canonical_code", "enumerate_triangulations",
    "Prototile", "SideLabel", "by_name", "catalog16", "equivalent", "is_admissible", "reflect",
    "LabeledTiling", "verify_tiling", "vertex_spectrum",
    "admissible_vertices", "derive_avc_table", "fan_decompose", "solve_f_for_case",
    "FamilySpec", "generate", "atlas",
    "SearchConfig", "avc_constrained_search", "classify", "enumerate_labelings", "enumerate_tilings",
]
