"""Finite workbench for the blocked-atom permutation model."""

from rclab.fm.model import (
    HF,
    Atom,
    BlockId,
    GroupElement,
    HFSet,
    Universe,
    apply,
    atoms_of,
    blocks_of,
    compose,
    decode,
    encode,
    hf,
    hf_key,
)
from rclab.fm.orbit import (
    OrbitSpace,
    chi,
    chi_key,
    dist,
    orbit_select,
    orbit_select_stages,
    orbit_split,
    rank_classes,
)
from rclab.fm.supports import (
    CensusReport,
    ClosedSupport,
    canonical_family,
    closed_sets,
    closure,
    fix_group,
    is_support,
    minimal_closed_support,
    orbit_classes,
    support_order,
    symmetric_choice_census,
)

__all__ = [
    "HF",
    "Atom",
    "BlockId",
    "CensusReport",
    "ClosedSupport",
    "GroupElement",
    "HFSet",
    "OrbitSpace",
    "Universe",
    "apply",
    "atoms_of",
    "blocks_of",
    "canonical_family",
    "chi",
    "chi_key",
    "closed_sets",
    "closure",
    "compose",
    "decode",
    "dist",
    "encode",
    "fix_group",
    "hf",
    "hf_key",
    "is_support",
    "minimal_closed_support",
    "orbit_classes",
    "orbit_select",
    "orbit_select_stages",
    "orbit_split",
    "rank_classes",
    "support_order",
    "symmetric_choice_census",
]
