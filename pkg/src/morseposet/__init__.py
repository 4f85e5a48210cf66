"""Morse posets of the distance function to a finite point set.

The Morse poset generalizes the Gabriel graph: it lists the subsets of points
whose circumcenters are critical points of the distance to the nearest point.
For four points in R^3 the poset takes one of nine combinatorial types.
"""
from .classify import LABELS, TetrahedronType, classify_tetrahedron, graph_shape, validate_counts
from .errors import (
    BadEdgeCount,
    CriticalEpsilon,
    DegenerateSubset,
    Disconnected,
    EulerViolation,
    MorsePosetError,
    NonGeneric,
    NonGenericEndpoint,
    NotRealizable,
    TheoremViolation,
    UnresolvedCluster,
)
from .geometry import (
    DEFAULT_EPS,
    Configuration,
    barycentric_position,
    circumcenter,
    circumradius_from_lengths,
    genericity_check,
    min_enclosing_ball,
    perturb,
)
from .morse import (
    CechFiltration,
    MorsePoset,
    cech_euler_characteristic,
    critical_spectrum,
    gabriel_graph,
    is_active,
    morse_poset,
)
from .ratio import RatioReport, edelsbrunner_ratio, per_type_min_scan
from .sampling import SamplerConfig, TypeHistogram, run_statistics, sphere_moment_check, sphere_point
from .transitions import PathSpec, TransitionEvent, check_event, scan_path

__version__ = "0.1.0"
