"""Finite, equivariant choice-extraction kernels."""

from rclab.extraction.blocks import RoundOutcome, block_case, pair_blocks_round
from rclab.extraction.kernels import (
    argmax_set,
    argmin_set,
    k32_select,
    kummer_minority_select,
    minority_select,
    octet_select,
    pentagon_edge_select,
    triple_vote_select,
)
from rclab.extraction.oracle import BlockFamily, OracleChoice, VoteTable

__all__ = [
    "BlockFamily",
    "OracleChoice",
    "RoundOutcome",
    "VoteTable",
    "argmax_set",
    "argmin_set",
    "block_case",
    "k32_select",
    "kummer_minority_select",
    "minority_select",
    "octet_select",
    "pair_blocks_round",
    "pentagon_edge_select",
    "triple_vote_select",
]
