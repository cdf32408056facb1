"""Structure of the rate region of a discrete memoryless multiple-access channel.

For one fixed product input distribution the achievable rates form a
polytope.  This package labels each of its faces by a nested chain of
user sets plus a set of silent users, reads group successive decoding
orders off those labels, counts faces exactly, and checks all of it
against brute-force vertex enumeration.
"""

from .channel import (
    ChannelSpec,
    MICache,
    binary_symmetric,
    deterministic_channel,
    integer_adder,
    joint_distribution,
    mod2_adder,
    mutual_info,
    parallel_channels,
)
from .counting import (
    FaceCounts,
    count_back,
    count_dominant,
    count_edges,
    count_front,
    count_table,
    count_total,
    count_vertices,
    face_counts,
    facet_counts,
    stirling2,
)
from .errors import (
    CapacityError,
    ChannelValidationError,
    ConsistencyError,
    DegenerateRegionError,
    InvalidLabelError,
    NotAchievable,
    PreconditionError,
)
from .facelattice import (
    DecodingPlan,
    FaceLabel,
    decoding_order,
    dominant_vertex,
    enumerate_faces,
    face_dim,
    locate_minimal_face,
    membership,
    merge_labels,
    parse_label,
    validate_label,
)
from .fixtures import load_fixture
from .oracle import build_face_lattice, cross_validate, enumerate_vertices
from .region import Constraint, DegeneracyReport, HRep, build_hrep, check_degeneracy

__version__ = "0.1.0"

__all__ = [
    "binary_symmetric",
    "build_face_lattice",
    "build_hrep",
    "CapacityError",
    "ChannelSpec",
    "ChannelValidationError",
    "check_degeneracy",
    "ConsistencyError",
    "Constraint",
    "count_back",
    "count_dominant",
    "count_edges",
    "count_front",
    "count_table",
    "count_total",
    "count_vertices",
    "cross_validate",
    "decoding_order",
    "DecodingPlan",
    "DegeneracyReport",
    "DegenerateRegionError",
    "deterministic_channel",
    "dominant_vertex",
    "enumerate_faces",
    "enumerate_vertices",
    "face_counts",
    "face_dim",
    "FaceCounts",
    "FaceLabel",
    "facet_counts",
    "HRep",
    "integer_adder",
    "InvalidLabelError",
    "joint_distribution",
    "load_fixture",
    "locate_minimal_face",
    "membership",
    "merge_labels",
    "MICache",
    "mod2_adder",
    "mutual_info",
    "NotAchievable",
    "parallel_channels",
    "parse_label",
    "PreconditionError",
    "stirling2",
    "validate_label",
]
