"""Exact root-level computations on adjoint orbits of compact semisimple Lie groups."""

from .rootsys import RootSystem, build_root_system, parse_type
from .chevalley import structure_constants
from .orbit import (
    ComplexStructure,
    HermitianStructure,
    InvariantMetric,
    OrbitSpec,
    all_orbits,
    enumerate_complex_structures,
    is_kaehler,
    make_orbit,
)
from .verify import induction_replay, verify_theorem
from .gk import GKInstance, check_gk, gualtieri_build

__version__ = "0.1.0"

__all__ = [
    "ComplexStructure",
    "GKInstance",
    "HermitianStructure",
    "InvariantMetric",
    "OrbitSpec",
    "RootSystem",
    "all_orbits",
    "build_root_system",
    "check_gk",
    "enumerate_complex_structures",
    "gualtieri_build",
    "induction_replay",
    "is_kaehler",
    "make_orbit",
    "parse_type",
    "structure_constants",
    "verify_theorem",
]
