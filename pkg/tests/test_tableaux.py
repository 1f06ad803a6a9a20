import pytest

from upq_packets.cohind import (InductionDescriptor, ThetaData, range_class,
                                segments_of, tableau_pair)
from upq_packets.halfint import HalfInt, HalfIntMultiset, Segment
from upq_packets.tableaux import (MINUS, PLUS, as_pair_equal, build_initial,
                                  overlap_and_sing, trapa_normalize)
from upq_packets.weights import GroupSignature


def seg(lo_twice, hi_twice):
    return Segment.from_bounds(HalfInt(lo_twice), HalfInt(hi_twice))


def build(p, q, blocks, segments):
    return build_initial(GroupSignature(p, q), blocks, segments)


def desc(p, q, blocks, values):
    return InductionDescriptor(ThetaData(GroupSignature(p, q), tuple(blocks)),
                               tuple(values))


def ann_columns(out):
    return [[v.twice for v in col] for col in out.ann.columns]


def test_build_single_block_u11():
    stack = build(1, 1, [(1, 1)], [seg(-1, 1)])
    assert sorted(stack.row_shapes) == [(1, MINUS), (1, PLUS)]
    boxes = stack.blocks[0]
    assert [(b.col, b.sign, b.entry.twice) for b in boxes] == [
        (1, PLUS, 1), (1, MINUS, -1)]


def test_build_two_singleton_blocks_merge_into_one_row():
    stack = build(1, 1, [(1, 0), (0, 1)], [seg(1, 1), seg(1, 1)])
    assert stack.row_shapes == ((2, PLUS),)
    assert [(b.col, b.entry.twice) for b in stack.blocks[1]] == [(2, 1)]


def test_build_mixed_then_minus():
    stack = build(1, 2, [(1, 1), (0, 1)], [seg(0, 2), seg(-2, -2)])
    assert sorted(stack.row_shapes) == [(1, MINUS), (2, PLUS)]
    assert [(b.col, b.entry.twice) for b in stack.blocks[0]] == [(1, 2), (1, 0)]
    assert [(b.col, b.entry.twice) for b in stack.blocks[1]] == [(2, -2)]


def test_build_rejects_empty_block():
    with pytest.raises(ValueError):
        build(1, 0, [(1, 0), (0, 0)], [seg(1, 1), Segment.empty()])


def test_build_sign_counts_and_shape():
    stack = build(2, 3, [(1, 2), (1, 1)], [seg(0, 4), seg(-3, -1)])
    plus = sum(1 for blk in stack.blocks for b in blk if b.sign == PLUS)
    minus = sum(1 for blk in stack.blocks for b in blk if b.sign == MINUS)
    assert (plus, minus) == (2, 3)
    lengths = sorted((length for length, _ in stack.row_shapes), reverse=True)
    assert lengths == sorted(lengths, reverse=True)
    assert sum(lengths) == 5


def test_overlap_and_sing_examples():
    stack = build(1, 1, [(1, 0), (0, 1)], [seg(1, 1), seg(1, 1)])
    assert overlap_and_sing(stack, 0) == (1, 1)

    stack = build(2, 0, [(1, 0), (1, 0)], [seg(1, 1), seg(1, 1)])
    assert overlap_and_sing(stack, 0) == (0, 1)

    stack = build(1, 1, [(1, 0), (0, 1)], [seg(1, 1), seg(-1, -1)])
    assert overlap_and_sing(stack, 0)[1] == 0


def test_normalize_u11_one_row():
    out = trapa_normalize(build(1, 1, [(1, 0), (0, 1)], [seg(1, 1), seg(1, 1)]))
    assert not out.is_zero
    assert ann_columns(out) == [[1], [1]]
    assert out.as_tab.rows == ((2, PLUS),)


def test_normalize_u20_zero():
    out = trapa_normalize(build(2, 0, [(1, 0), (1, 0)], [seg(1, 1), seg(1, 1)]))
    assert out.is_zero


def test_normalize_single_block_trivial():
    out = trapa_normalize(build(1, 1, [(1, 1)], [seg(-1, 1)]))
    assert not out.is_zero
    assert ann_columns(out) == [[1, -1]]
    assert sorted(out.as_tab.rows) == [(1, MINUS), (1, PLUS)]


def test_normalize_descent_case_with_shift():
    # nu_1 = [0,3], nu_2 = {2}: the right block's entry must sink to the
    # bottom of the left segment and the chain repartition regrows it.
    out = trapa_normalize(build(2, 3, [(2, 2), (0, 1)], [seg(0, 6), seg(4, 4)]))
    assert not out.is_zero
    assert ann_columns(out) == [[6, 4, 2, 0], [4]]
    assert sorted(out.as_tab.rows) == [(1, MINUS), (1, MINUS), (1, PLUS), (2, PLUS)]


def test_normalize_preserves_entries_and_shape():
    stack = build(2, 2, [(1, 1), (1, 1)], [seg(-1, 1), seg(-3, -1)])
    out = trapa_normalize(stack)
    assert not out.is_zero
    assert out.stack.entry_multiset() == stack.entry_multiset()
    assert out.as_tab == stack.signed_tableau()


def test_normalize_idempotent():
    cases = [
        build(1, 1, [(1, 0), (0, 1)], [seg(1, 1), seg(1, 1)]),
        build(2, 3, [(2, 2), (0, 1)], [seg(0, 6), seg(4, 4)]),
        build(2, 1, [(2, 0), (0, 1)], [seg(0, 2), seg(2, 2)]),
    ]
    for stack in cases:
        out = trapa_normalize(stack)
        assert not out.is_zero
        again = trapa_normalize(out.stack)
        assert not again.is_zero
        assert as_pair_equal((again.ann, again.as_tab), (out.ann, out.as_tab))


def test_as_pair_equal_row_interchange_and_errors():
    out_a = trapa_normalize(build(1, 1, [(1, 1)], [seg(-1, 1)]))
    out_b = trapa_normalize(build(1, 1, [(1, 1)], [seg(-1, 1)]))
    assert as_pair_equal((out_a.ann, out_a.as_tab), (out_b.ann, out_b.as_tab))

    holo = trapa_normalize(build(1, 1, [(1, 0), (0, 1)], [seg(1, 1), seg(-1, -1)]))
    anti = trapa_normalize(build(1, 1, [(0, 1), (1, 0)], [seg(1, 1), seg(-1, -1)]))
    assert not as_pair_equal((holo.ann, holo.as_tab), (anti.ann, anti.as_tab))

    other = trapa_normalize(build(2, 0, [(2, 0)], [seg(-1, 1)]))
    with pytest.raises(ValueError):
        as_pair_equal((holo.ann, holo.as_tab), (other.ann, other.as_tab))
    shifted = trapa_normalize(build(1, 1, [(1, 0), (0, 1)], [seg(3, 3), seg(1, 1)]))
    with pytest.raises(ValueError):
        as_pair_equal((holo.ann, holo.as_tab), (shifted.ann, shifted.as_tab))


def _two_block_descriptors(max_n, span=8):
    for n in range(2, max_n + 1):
        for a1 in range(1, n):
            a2 = n - a1
            for p1 in range(a1 + 1):
                for p2 in range(a2 + 1):
                    sig = GroupSignature(p1 + p2, (a1 - p1) + (a2 - p2))
                    d = ThetaData(sig, ((p1, a1 - p1), (p2, a2 - p2)))
                    for v1 in range(-span // 2, span - span // 2):
                        yield InductionDescriptor(d, (v1, 0))


def test_two_block_nonvanishing_criterion():
    checked = 0
    for dd in _two_block_descriptors(5):
        if not range_class(dd).mediocre:
            continue
        (p1, q1), (p2, q2) = dd.d.blocks
        s1, s2 = segments_of(dd)
        sing = s1.as_multiset().intersection(s2.as_multiset()).size
        expected = min(p1, q2) + min(q1, p2) >= sing
        out = tableau_pair(dd)
        assert (not out.is_zero) == expected, (
            f"blocks {dd.d.blocks} values {dd.values}: nonzero should be "
            f"{expected}")
        checked += 1
    assert checked > 400


def test_nonzero_outcome_is_valid_antitableau():
    for dd in _two_block_descriptors(4, span=4):
        if not range_class(dd).mediocre:
            continue
        out = tableau_pair(dd)
        if out.is_zero:
            continue
        ann = out.ann
        total = HalfIntMultiset.empty()
        for s in segments_of(dd):
            total = total.union(s.as_multiset())
        assert ann.entry_multiset() == total
