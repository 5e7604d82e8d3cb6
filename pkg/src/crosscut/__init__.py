"""Finite-depth graph encodings into cross-cutting equivalence relations."""

from .branches import (
    Branch,
    BranchFamily,
    ClassCounts,
    DepthError,
    build_family,
    interleave,
    tail_class,
    tail_equal,
    thresholds,
    validate_counts,
)
from .group_action import GroupElement, act, induced_automorphism, respecting_element
from .reduction import Graph, ReductionParams, decode, encode, make_params, roundtrip, transport_iso
from .reducts import BlockPartition, UnaryStructure, block_partition, cb_reduct, coarsen, delta_value
from .structures import (
    EqStructure,
    IsoWitness,
    build_ambient,
    check_cross_cutting,
    check_witness,
    e_infinity,
    find_isomorphism,
    meet_partition,
)

__all__ = [
    "BlockPartition",
    "Branch",
    "BranchFamily",
    "ClassCounts",
    "DepthError",
    "EqStructure",
    "Graph",
    "GroupElement",
    "IsoWitness",
    "ReductionParams",
    "UnaryStructure",
    "act",
    "block_partition",
    "build_ambient",
    "build_family",
    "cb_reduct",
    "check_cross_cutting",
    "check_witness",
    "coarsen",
    "decode",
    "delta_value",
    "e_infinity",
    "encode",
    "find_isomorphism",
    "induced_automorphism",
    "interleave",
    "make_params",
    "meet_partition",
    "respecting_element",
    "roundtrip",
    "tail_class",
    "tail_equal",
    "thresholds",
    "transport_iso",
    "validate_counts",
]

__version__ = "0.1.0"
