"""Twisted class-2 groups and their strings."""

__version__ = "0.1.0"

from .catalog import (  # noqa: E402
    abelian_group,
    burnside_p4,
    classify_by_order_structure,
    find_maximal,
    heisenberg,
    p4_catalog,
    parse_group,
    unitriangular,
)
from .groups import build_pc_group, check_consistency, direct_product  # noqa: E402
from .invariants import fingerprint, is_isomorphic, order_structure  # noqa: E402
from .presentation import PcPresentation  # noqa: E402
from .twist import TwistedGroup, iterate_twist, string_of, twist  # noqa: E402

__all__ = [
    "PcPresentation",
    "TwistedGroup",
    "abelian_group",
    "build_pc_group",
    "burnside_p4",
    "check_consistency",
    "classify_by_order_structure",
    "direct_product",
    "find_maximal",
    "fingerprint",
    "heisenberg",
    "is_isomorphic",
    "iterate_twist",
    "order_structure",
    "p4_catalog",
    "parse_group",
    "string_of",
    "twist",
    "unitriangular",
]
