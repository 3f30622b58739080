"""Canonical generators for terminal regular b-groups.

Möbius-map primitives, canonical triangle-group generators, (0,4) and (1,1)
building blocks with their assembly along pants decompositions, the
genus-2 to (0,6;2^6) comparison, and verification helpers.
"""

from ._backend import BACKEND
from .bgroups import (
    CoordinateBounds, MarkedBGroup, Word, assemble, build_0_4, build_1_1,
    coordinate_bounds_0_4, coordinate_bounds_1_1, plumbing_param_0_4,
    plumbing_param_1_1,
)
from .moebius import (
    IDENTITY, INF, Classification, Kind, Moebius, apply, classify, compose,
    cross_ratio, fixed_points, inverse, parabolic_sqrt, psl_distance, psl_eq,
)
from .partition import PartitionGraph, load_partition, preset
from .patterson import (
    extended_genus2_group, genus2_group, patterson_check, patterson_map,
    patterson_parameters, zero_six_group,
)
from .report import Check, Status, VerificationReport
from .triangle import (
    Signature, SignatureType, TriangleGroupSpec, canonical_generators,
    constants, is_canonical, l_squared, signature_type, standard_generators,
    well_ordered,
)
from .verify import (
    PointCloud, check_group, check_relations, circle_fit_residual,
    jorgensen_probe, limit_set_sample, shimizu_probe,
)

__version__ = "0.1.0"
