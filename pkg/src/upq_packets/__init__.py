"""Arthur packets of U(p,q) and unitary lowest weight representations.

The package decides which packets of good A-parameters contain a given
irreducible unitary lowest weight representation, extracts the unique
lowest K-type a packet can contain, and verifies both closed-form answers
against the tableau pair (annihilator antitableau, signed asymptotic
support), which is a complete isomorphism invariant.
"""

from .errors import InternalInconsistencyError, IterationCapExceeded
from .halfint import (HalfInt, HalfIntMultiset, Segment, half, mset_algebra,
                      partition_into_segments, seg_compare)
from .weights import (GroupSignature, KWeight, UnitarityClass,
                      inf_char_of_lowest_weight, is_unitarizable,
                      kweight_from_pq, unitarity_class, weight_stats)
from .tableaux import (AntiTableau, ColumnStack, NormalizeOutcome,
                       SignedTableau, as_pair_equal, build_initial,
                       overlap_and_sing, trapa_normalize)
from .cohind import (InductionDescriptor, ThetaData, absorb_adjacent,
                     holomorphic_lowest_ktype, lowest_weight_invariants,
                     normalize_blocks, range_class, realize_lowest_weight,
                     segments_of, tableau_pair)
from .packets import (AParameter, PacketMember, contains_lowest_weight,
                      d_zero, enumerate_D, epsilon, inf_char,
                      lowest_weight_of_packet, member, packet,
                      packets_containing)
from .oracle import (SweepConfig, SweepReport, oracle_contains,
                     oracle_lowest_weights, sweep_verify)

__all__ = [
    "AParameter", "AntiTableau", "ColumnStack", "GroupSignature", "HalfInt",
    "HalfIntMultiset", "InductionDescriptor", "InternalInconsistencyError",
    "IterationCapExceeded", "KWeight", "NormalizeOutcome", "PacketMember",
    "Segment", "SignedTableau", "SweepConfig", "SweepReport", "ThetaData",
    "UnitarityClass", "absorb_adjacent", "as_pair_equal", "build_initial",
    "contains_lowest_weight", "d_zero", "enumerate_D", "epsilon", "half",
    "holomorphic_lowest_ktype", "inf_char", "inf_char_of_lowest_weight",
    "is_unitarizable", "kweight_from_pq", "lowest_weight_invariants",
    "lowest_weight_of_packet", "member", "mset_algebra", "normalize_blocks",
    "oracle_contains", "oracle_lowest_weights", "overlap_and_sing", "packet",
    "packets_containing", "partition_into_segments", "range_class",
    "realize_lowest_weight", "seg_compare", "segments_of", "sweep_verify",
    "tableau_pair", "trapa_normalize", "unitarity_class", "weight_stats",
]
