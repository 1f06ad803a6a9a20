import pytest

from upq_packets.cohind import (InductionDescriptor, ThetaData, absorb_adjacent,
                                holomorphic_lowest_ktype, invariants_preserved,
                                lowest_weight_invariants, normalize_blocks,
                                range_class, realize_lowest_weight, segments_of,
                                tableau_pair, two_rho_u_cap_p)
from upq_packets.halfint import HalfInt, HalfIntMultiset, Segment
from upq_packets.tableaux import MINUS, PLUS
from upq_packets.weights import (GroupSignature, KWeight,
                                 inf_char_of_lowest_weight)


def seg(lo_twice, hi_twice):
    return Segment.from_bounds(HalfInt(lo_twice), HalfInt(hi_twice))


def desc(p, q, blocks, values):
    return InductionDescriptor(ThetaData(GroupSignature(p, q), tuple(blocks)),
                               tuple(values))


def w(p, q, *lam):
    return KWeight(GroupSignature(p, q), tuple(lam))


def test_theta_data_validation():
    with pytest.raises(ValueError):
        ThetaData(GroupSignature(1, 1), ((1, 0),))
    with pytest.raises(ValueError):
        ThetaData(GroupSignature(1, 1), ((1, 0), (0, 0), (0, 1)))
    d = ThetaData(GroupSignature(2, 1), ((1, 0), (1, 1)))
    assert d.sizes() == [1, 2]


def test_holomorphic_detection():
    assert ThetaData(GroupSignature(1, 1), ((1, 0), (0, 1))).is_holomorphic()
    assert ThetaData(GroupSignature(1, 1), ((1, 1),)).is_holomorphic()
    assert ThetaData(GroupSignature(2, 2), ((1, 0), (1, 2))).is_holomorphic()
    assert not ThetaData(GroupSignature(1, 1), ((0, 1), (1, 0))).is_holomorphic()
    assert not ThetaData(GroupSignature(2, 1), ((1, 1), (1, 0))).is_holomorphic()
    assert ThetaData(GroupSignature(0, 2), ((0, 1), (0, 1))).pivot() == 0


def test_segments_of_examples():
    assert segments_of(desc(1, 1, [(1, 1)], [0])) == [seg(-1, 1)]
    assert segments_of(desc(1, 1, [(1, 0), (0, 1)], [0, 0])) == [seg(1, 1), seg(-1, -1)]
    assert segments_of(desc(1, 2, [(1, 1), (0, 1)], [0, 0])) == [seg(0, 2), seg(-2, -2)]


def test_segments_sizes_and_union():
    dd = desc(2, 2, [(1, 1), (1, 0), (0, 1)], [1, 0, -2])
    segs = segments_of(dd)
    assert [s.length for s in segs] == [2, 1, 1]
    assert dd.inf_char().size == 4


def test_range_class_examples():
    assert range_class(desc(1, 1, [(1, 1)], [0])) == (True, True)
    assert range_class(desc(1, 1, [(1, 0), (0, 1)], [0, 0])) == (True, True)
    # Segments ({-1/2}, {1/2}): means increase and the first segment sits
    # strictly below the second, so neither range contains it.
    assert range_class(desc(1, 1, [(0, 1), (1, 0)], [-1, 1])) == (False, False)
    # Equal segments are weakly fair.
    assert range_class(desc(1, 1, [(1, 0), (0, 1)], [0, 1])).weakly_fair
    # Mediocre but not weakly fair: contained with a later higher mean.
    dd = desc(2, 1, [(1, 1), (1, 0)], [0, 2])
    rc = range_class(dd)
    assert rc.mediocre and not rc.weakly_fair


def test_two_rho_u_cap_p():
    d = ThetaData(GroupSignature(1, 1), ((1, 0), (0, 1)))
    assert two_rho_u_cap_p(d) == [1, -1]
    d = ThetaData(GroupSignature(1, 2), ((1, 1), (0, 1)))
    assert two_rho_u_cap_p(d) == [1, 0, -1]
    d = ThetaData(GroupSignature(2, 2), ((1, 0), (1, 0), (0, 1), (0, 1)))
    assert two_rho_u_cap_p(d) == [2, 2, -2, -2]


def test_holomorphic_lowest_ktype_examples():
    assert holomorphic_lowest_ktype(desc(1, 1, [(1, 0), (0, 1)], [0, 0])).lam == (1, -1)
    got = holomorphic_lowest_ktype(
        desc(1, 2, [(1, 0), (0, 1), (0, 1)], [0, 1, -1]))
    assert got.lam == (2, 0, -2)
    assert holomorphic_lowest_ktype(desc(1, 1, [(1, 1)], [0])).lam == (0, 0)


def test_holomorphic_lowest_ktype_rejects_nondominant():
    with pytest.raises(ValueError):
        holomorphic_lowest_ktype(desc(2, 0, [(1, 0), (1, 0)], [0, 1]))
    with pytest.raises(ValueError):
        holomorphic_lowest_ktype(desc(1, 1, [(0, 1), (1, 0)], [-1, 1]))


def test_realize_lowest_weight_examples():
    dd = realize_lowest_weight(w(1, 1, 0, 0))
    assert dd.d.blocks == ((1, 1),) and dd.values == (0,)
    assert segments_of(dd) == [seg(-1, 1)]

    dd = realize_lowest_weight(w(1, 1, 1, -1))
    assert dd.d.blocks == ((1, 0), (0, 1)) and dd.values == (0, 0)
    assert segments_of(dd) == [seg(1, 1), seg(-1, -1)]

    dd = realize_lowest_weight(w(1, 2, 1, 0, -1))
    assert dd.d.blocks == ((1, 1), (0, 1)) and dd.values == (0, 0)
    assert segments_of(dd) == [seg(0, 2), seg(-2, -2)]


def test_realize_rejects_nonunitarizable():
    with pytest.raises(ValueError):
        realize_lowest_weight(w(2, 2, 1, 0, 0, 0))


def test_round_trip_identity_window():
    from upq_packets.oracle import dominant_weights
    from upq_packets.weights import is_unitarizable
    for p in range(0, 5):
        for q in range(0, 5 - p):
            if p + q == 0:
                continue
            sig = GroupSignature(p, q)
            for kw in dominant_weights(sig, 2):
                if not is_unitarizable(kw):
                    continue
                dd = realize_lowest_weight(kw)
                assert holomorphic_lowest_ktype(dd) == kw
                chi = HalfIntMultiset.empty()
                for s in segments_of(dd):
                    chi = chi.union(s.as_multiset())
                assert chi == inf_char_of_lowest_weight(kw)


def test_lowest_weight_invariants_examples():
    ann, as_tab = lowest_weight_invariants(w(1, 1, 0, 0))
    assert [[v.twice for v in c] for c in ann.columns] == [[1, -1]]
    assert sorted(as_tab.rows) == [(1, MINUS), (1, PLUS)]

    ann, as_tab = lowest_weight_invariants(w(1, 1, 1, -1))
    assert [[v.twice for v in c] for c in ann.columns] == [[1], [-1]]
    assert as_tab.rows == ((2, PLUS),)

    ann, as_tab = lowest_weight_invariants(w(1, 2, 1, 0, -1))
    assert [[v.twice for v in c] for c in ann.columns] == [[2, 0], [-2]]
    assert sorted(as_tab.rows) == [(1, MINUS), (2, PLUS)]


def test_lowest_weight_tableau_shape_corollary():
    from upq_packets.oracle import dominant_weights
    from upq_packets.weights import is_unitarizable
    for p in range(0, 5):
        for q in range(0, 5 - p):
            if p + q == 0:
                continue
            sig = GroupSignature(p, q)
            for kw in dominant_weights(sig, 2):
                if not is_unitarizable(kw):
                    continue
                ann, as_tab = lowest_weight_invariants(kw)
                assert as_tab.n_columns <= 2
                for length, first in as_tab.rows:
                    assert length <= 2
                    if length == 2:
                        assert first == PLUS
                if as_tab.n_columns == 1 and p and q:
                    # One-column support means the module is a character:
                    # its character entries are distinct and consecutive.
                    col = ann.columns[0]
                    assert all(col[i].twice - col[i + 1].twice == 2
                               for i in range(len(col) - 1))


def test_normalize_blocks_identity_and_preservation():
    dd = realize_lowest_weight(w(1, 2, 1, 0, -1))
    out = normalize_blocks(dd)
    # Intersections are empty here, so only the middle and tail survive.
    assert out.d.blocks == dd.d.blocks
    assert segments_of(out) == segments_of(dd)
    assert invariants_preserved(dd, out)


def test_normalize_blocks_five_block_form():
    # nu = ([2,3], [0,2]): the pivot segment meets the earlier one in {2},
    # so the rewrite splits the first block into {3} and {2}.
    dd = desc(3, 2, [(2, 0), (1, 2)], [1, 2])
    assert segments_of(dd) == [seg(4, 6), seg(0, 4)]
    out = normalize_blocks(dd)
    assert out.d.blocks == ((1, 0), (1, 0), (1, 2))
    assert segments_of(out) == [seg(6, 6), seg(4, 4), seg(0, 4)]
    assert invariants_preserved(dd, out)


def test_normalize_blocks_refuses_non_segment_piece():
    # nu_{<j} = {5/2, 1/2} meets the pivot segment in a non-consecutive
    # set, which cannot serve as a block segment.
    dd = desc(4, 2, [(1, 0), (1, 0), (2, 2)], [0, -1, 2])
    assert range_class(dd).mediocre
    with pytest.raises(ValueError):
        normalize_blocks(dd)


def test_absorb_adjacent_preserves_invariants():
    # nu_1 = [0,1] contains nu_2 = {0}: swapping is the descent rewrite.
    dd = desc(1, 2, [(1, 1), (0, 1)], [0, 1])
    assert segments_of(dd) == [seg(0, 2), seg(0, 0)]
    swapped = absorb_adjacent(dd, "next")
    assert segments_of(swapped) == [seg(0, 0), seg(0, 2)]
    assert invariants_preserved(dd, swapped)


def test_tableau_pair_requires_mediocre():
    with pytest.raises(ValueError):
        tableau_pair(desc(1, 1, [(0, 1), (1, 0)], [-1, 1]))
