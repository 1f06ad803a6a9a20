"""Theta-stable parabolic data and one-dimensional cohomological inductions.

An induction datum is a block sequence d = ((p_i, q_i))_i with an integer
value per block.  Each block carries the segment

    nu_i = [value_i + (N+1)/2 - a_{<=i},  value_i + (N-1)/2 - a_{<i}]

whose disjoint union is the infinitesimal character.  This module classifies
the positivity range of a datum, realizes a unitarizable lowest weight
module as such an induction, reads off lowest K-types of holomorphic data,
and rewrites block decompositions without changing the module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import InternalInconsistencyError
from .halfint import HalfInt, HalfIntMultiset, Segment
from .tableaux import (AntiTableau, ColumnStack, NormalizeOutcome, PLUS,
                       SignedTableau, as_pair_equal, build_initial,
                       trapa_normalize)
from .weights import (GroupSignature, KWeight, is_unitarizable, weight_stats)


@dataclass(frozen=True)
class ThetaData:
    """A block sequence ((p_i, q_i))_i with p_i + q_i >= 1 summing to (p, q)."""

    sig: GroupSignature
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("at least one block required")
        for pk, qk in self.blocks:
            if pk < 0 or qk < 0 or pk + qk == 0:
                raise ValueError(f"bad block ({pk},{qk})")
        if sum(pk for pk, _ in self.blocks) != self.sig.p:
            raise ValueError("block p-parts do not sum to p")
        if sum(qk for _, qk in self.blocks) != self.sig.q:
            raise ValueError("block q-parts do not sum to q")

    @property
    def r(self) -> int:
        return len(self.blocks)

    def sizes(self) -> list[int]:
        return [pk + qk for pk, qk in self.blocks]

    def is_holomorphic(self) -> bool:
        """True iff some pivot j has q_i = 0 before it and p_l = 0 after it."""
        return self.pivot() is not None

    def pivot(self) -> int | None:
        """0-based index j of the holomorphic pivot block, or None.

        For a holomorphic datum all plus parts sit in blocks <= j and all
        minus parts in blocks >= j; j is the last block with p_i > 0 when one
        exists, else 0.
        """
        j = 0
        for i, (pk, _) in enumerate(self.blocks):
            if pk > 0:
                j = i
        if any(qk > 0 for _, qk in self.blocks[:j]):
            return None
        if any(pk > 0 for pk, _ in self.blocks[j + 1:]):
            return None
        return j

    def to_json(self) -> dict:
        return {"p": self.sig.p, "q": self.sig.q,
                "blocks": [list(b) for b in self.blocks]}


@dataclass(frozen=True)
class InductionDescriptor:
    """A ThetaData together with the constant integer value of each block."""

    d: ThetaData
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.d.r:
            raise ValueError("one value per block required")

    def segments(self) -> list[Segment]:
        return segments_of(self)

    def inf_char(self) -> HalfIntMultiset:
        out = HalfIntMultiset.empty()
        for seg in self.segments():
            out = out.union(seg.as_multiset())
        return out

    def to_json(self) -> dict:
        return {"p": self.d.sig.p, "q": self.d.sig.q,
                "blocks": [list(b) for b in self.d.blocks],
                "values": list(self.values),
                "segments": [s.to_json() for s in self.segments()]}

    @classmethod
    def from_json(cls, obj: dict) -> "InductionDescriptor":
        sig = GroupSignature(int(obj["p"]), int(obj["q"]))
        blocks = tuple((int(b[0]), int(b[1])) for b in obj["blocks"])
        return cls(ThetaData(sig, blocks), tuple(int(v) for v in obj["values"]))


def segments_of(desc: InductionDescriptor) -> list[Segment]:
    """The per-block segments; block i has |nu_i| = p_i + q_i."""
    n = desc.d.sig.N
    segs = []
    before = 0
    for (pk, qk), value in zip(desc.d.blocks, desc.values):
        size = pk + qk
        upto = before + size
        start = HalfInt(2 * value + (n + 1) - 2 * upto)
        segs.append(Segment(start, size))
        before = upto
    return segs


class RangeClass(NamedTuple):
    weakly_fair: bool
    mediocre: bool


def range_class(desc: InductionDescriptor) -> RangeClass:
    """Weakly fair and mediocre range membership.

    Weakly fair: the segment means weakly decrease, equivalently
    2(value_i - value_{i+1}) >= -(a_i + a_{i+1}) for adjacent blocks.
    Mediocre: no earlier segment sits strictly componentwise below a later
    one, equivalently value_i - value_j >= -max(a_i, a_j) - (sizes between)
    for all i < j.  Both routes are computed and must agree.
    """
    segs = segments_of(desc)
    sizes = desc.d.sizes()
    values = desc.values
    r = desc.d.r

    wf_means = all(
        segs[i].start.twice + segs[i].end.twice
        >= segs[i + 1].start.twice + segs[i + 1].end.twice
        for i in range(r - 1))
    wf_values = all(
        2 * (values[i] - values[i + 1]) >= -(sizes[i] + sizes[i + 1])
        for i in range(r - 1))
    if wf_means != wf_values:
        raise InternalInconsistencyError(
            f"weakly-fair tests disagree on {desc.to_json()}")

    med_segs = True
    med_values = True
    for i in range(r):
        for j in range(i + 1, r):
            if segs[i].start < segs[j].start and segs[i].end < segs[j].end:
                med_segs = False
            gap_bound = -max(sizes[i], sizes[j]) - sum(sizes[i + 1:j])
            if values[i] - values[j] < gap_bound:
                med_values = False
    if med_segs != med_values:
        raise InternalInconsistencyError(
            f"mediocre tests disagree on {desc.to_json()}")
    return RangeClass(weakly_fair=wf_means, mediocre=med_segs)


def two_rho_u_cap_p(d: ThetaData) -> list[int]:
    """Coordinates of 2rho(u cap p): each p-side coordinate of block i gets
    the number of minus coordinates in later blocks, each q-side coordinate
    of block i gets minus the number of plus coordinates in earlier blocks."""
    out: list[int] = []
    for i, (pk, _) in enumerate(d.blocks):
        later_minus = sum(qk for _, qk in d.blocks[i + 1:])
        out.extend([later_minus] * pk)
    for i, (_, qk) in enumerate(d.blocks):
        earlier_plus = sum(pk for pk, _ in d.blocks[:i])
        out.extend([-earlier_plus] * qk)
    return out


def _value_vector(desc: InductionDescriptor) -> list[int]:
    out = [v for (pk, _), v in zip(desc.d.blocks, desc.values) for _ in range(pk)]
    out += [v for (_, qk), v in zip(desc.d.blocks, desc.values) for _ in range(qk)]
    return out


def holomorphic_lowest_ktype(desc: InductionDescriptor) -> KWeight:
    """Lowest K-type of a nonzero holomorphic induction: value + 2rho(u cap p).

    For a fully split holomorphic chain the shift is (q,...,q, -p,...,-p).
    The result must be dominant; otherwise the datum is outside the scope of
    the occurrence formula and a ValueError is raised.
    """
    if not desc.d.is_holomorphic():
        raise ValueError("datum is not holomorphic")
    vec = _value_vector(desc)
    shift = two_rho_u_cap_p(desc.d)
    lam = tuple(a + b for a, b in zip(vec, shift))
    try:
        return KWeight(desc.d.sig, lam)
    except ValueError as exc:
        raise ValueError(f"lowest K-type {lam} outside lemma hypotheses") from exc


def realize_lowest_weight(w: KWeight) -> InductionDescriptor:
    """An induction descriptor whose module is the lowest weight module of w.

    Large gap (at least min(N-p', N-q')): fully split blocks
    ((1,0) x (p-p'), (p',0), (0,q'), (0,1) x (q-q')) with values lambda_i - q
    on the p-side and lambda_i + p on the q-side.  Small gap: blocks
    ((1,0) x (p-p'), (p', N-gap-p'), (0,1) x (gap-p+p')) with the mixed block
    carrying lambda_{p+1} + p - p'.  Degenerate signatures use the
    appropriate one-sided chain.
    """
    if not is_unitarizable(w):
        raise ValueError(f"{w.lam} is not unitarizable")
    sig = w.sig
    p, q, n = sig.p, sig.q, sig.N
    lam = w.lam
    st = weight_stats(w)
    pp, qp = st.p_prime, st.q_prime

    blocks: list[tuple[int, int]] = []
    values: list[int] = []
    if p == 0 or q == 0 or w.gap >= min(n - pp, n - qp):
        for i in range(p - pp):
            blocks.append((1, 0))
            values.append(lam[i] - q)
        if pp:
            blocks.append((pp, 0))
            values.append(lam[p - 1] - q)
        if qp:
            blocks.append((0, qp))
            values.append(lam[p] + p)
        for i in range(p + qp, n):
            blocks.append((0, 1))
            values.append(lam[i] + p)
    else:
        gap = w.gap
        mid_q = n - gap - pp
        tail = gap - p + pp
        for i in range(p - pp):
            blocks.append((1, 0))
            values.append(lam[i] - q)
        blocks.append((pp, mid_q))
        values.append(lam[p] + p - pp)
        for i in range(n - tail, n):
            blocks.append((0, 1))
            values.append(lam[i] + p)
    return InductionDescriptor(ThetaData(sig, tuple(blocks)), tuple(values))


def tableau_pair(desc: InductionDescriptor) -> NormalizeOutcome:
    """Build the initial stack for a mediocre-range datum and normalize it."""
    if not range_class(desc).mediocre:
        raise ValueError("datum outside the mediocre range")
    stack = build_initial(desc.d.sig, list(desc.d.blocks), desc.segments())
    return trapa_normalize(stack)


def initial_stack(desc: InductionDescriptor) -> ColumnStack:
    return build_initial(desc.d.sig, list(desc.d.blocks), desc.segments())


def _split_case_columns(w: KWeight) -> tuple[list[HalfInt], list[HalfInt]]:
    # Independent two-column description for the fully split realization.
    # Index k of the K-type carries the character entry
    # lambda_k + (p-q+1)/2 - k (p-side) or lambda_k + (N+1)/2 - (k-p)
    # (q-side).  The first column holds the p-side indices and the q-side
    # surplus beyond min(p,q), except that the i_0 bottom p-side indices
    # trade places with the i_0 bottom covered q-side indices; i_0 is the
    # least trade for which the arrangement is an antitableau.
    p, q, n = w.sig.p, w.sig.q, w.sig.N
    lam = w.lam
    m = min(p, q)

    def entry(k: int) -> HalfInt:
        if k <= p:
            return HalfInt(2 * lam[k - 1] + (p - q + 1) - 2 * k)
        return HalfInt(2 * lam[k - 1] + (n + 1) - 2 * (k - p))

    def arrangement(i0: int) -> tuple[list[HalfInt], list[HalfInt]]:
        col1 = [entry(k) for k in range(1, p - i0 + 1)]
        col1 += [entry(k) for k in range(p + m + 1 - i0, n + 1)]
        col2 = [entry(k) for k in range(p + 1, p + m - i0 + 1)]
        col2 += [entry(k) for k in range(p + 1 - i0, p + 1)]
        col1.sort(key=lambda v: -v.twice)
        col2.sort(key=lambda v: -v.twice)
        return col1, col2

    def valid(col1: list[HalfInt], col2: list[HalfInt]) -> bool:
        for col in (col1, col2):
            if any(col[i] == col[i + 1] for i in range(len(col) - 1)):
                return False
        return all(col1[r] >= col2[r] for r in range(len(col2)))

    for i0 in range(m + 1):
        col1, col2 = arrangement(i0)
        if valid(col1, col2):
            return col1, col2
    raise InternalInconsistencyError(
        f"no column arrangement for {w.lam} is an antitableau")


def lowest_weight_invariants(w: KWeight) -> tuple[AntiTableau, SignedTableau]:
    """The invariant pair of the lowest weight module of w, via the pipeline.

    Asserts the structural facts that hold for every unitary lowest weight
    module: the signed tableau has at most two columns and every two-box row
    reads plus-minus; in the fully split case the columns are cross-checked
    against the closed-form two-column description.
    """
    desc = realize_lowest_weight(w)
    out = tableau_pair(desc)
    if out.is_zero:
        raise InternalInconsistencyError(
            f"realization of unitarizable {w.lam} normalized to zero")
    ann, as_tab = out.ann, out.as_tab
    assert ann is not None and as_tab is not None
    if as_tab.n_columns > 2:
        raise InternalInconsistencyError(
            f"lowest weight signed tableau {as_tab.rows} has >2 columns")
    for length, first in as_tab.rows:
        if length == 2 and first != PLUS:
            raise InternalInconsistencyError(
                f"two-box row of {as_tab.rows} is not plus-minus")

    sig = w.sig
    if sig.p == 0 or sig.q == 0 or w.gap >= min(
            sig.N - weight_stats(w).p_prime, sig.N - weight_stats(w).q_prime):
        col1, col2 = _split_case_columns(w)
        expected = [c for c in (col1, col2) if c]
        got = [list(c) for c in ann.columns]
        if got != expected:
            raise InternalInconsistencyError(
                f"split-case columns {expected} differ from pipeline {got}")
    return ann, as_tab


def _descriptor_from_segments(sig: GroupSignature,
                              blocks: list[tuple[int, int]],
                              segs: list[Segment]) -> InductionDescriptor:
    n = sig.N
    values = []
    before = 0
    for (pk, qk), seg in zip(blocks, segs):
        size = pk + qk
        if seg.length != size:
            raise ValueError("segment size mismatch")
        twice = seg.end.twice - (n - 1) + 2 * before
        if twice % 2 != 0:
            raise ValueError(f"segment {seg} not realizable at this position")
        values.append(twice // 2)
        before += size
    return InductionDescriptor(ThetaData(sig, tuple(blocks)), tuple(values))


def normalize_blocks(desc: InductionDescriptor) -> InductionDescriptor:
    """Rewrite a holomorphic datum into the five-block canonical form.

    The blocks become (nu_{<j} minus the overlap with nu_j, that overlap,
    nu_j, the overlap of nu_j with nu_{>j}, the remainder of nu_{>j}), with
    plus parts on the first two and minus parts on the last two.  Empty
    pieces are dropped.  The module is unchanged; a ValueError ("rewrite
    unavailable") is raised when a piece is not a segment or the rewritten
    datum leaves the mediocre range.
    """
    j = desc.d.pivot()
    if j is None:
        raise ValueError("datum is not holomorphic")
    segs = segments_of(desc)
    nu_j = segs[j].as_multiset()
    nu_lt = HalfIntMultiset.empty()
    for s in segs[:j]:
        nu_lt = nu_lt.union(s.as_multiset())
    nu_gt = HalfIntMultiset.empty()
    for s in segs[j + 1:]:
        nu_gt = nu_gt.union(s.as_multiset())

    cap_lt = nu_j.intersection(nu_lt)
    cap_gt = nu_j.intersection(nu_gt)
    pieces = [nu_lt.difference(cap_lt), cap_lt, nu_j, cap_gt, nu_gt.difference(cap_gt)]
    p_j, q_j = desc.d.blocks[j]

    blocks: list[tuple[int, int]] = []
    new_segs: list[Segment] = []
    for idx, piece in enumerate(pieces):
        if piece.is_empty:
            if idx == 2:
                raise ValueError("rewrite unavailable: empty middle block")
            continue
        if not piece.is_segment():
            raise ValueError(f"rewrite unavailable: piece {piece} is not a segment")
        if idx < 2:
            blocks.append((piece.size, 0))
        elif idx == 2:
            blocks.append((p_j, q_j))
        else:
            blocks.append((0, piece.size))
        new_segs.append(piece.as_segment())

    try:
        out = _descriptor_from_segments(desc.d.sig, blocks, new_segs)
    except ValueError as exc:
        raise ValueError(f"rewrite unavailable: {exc}") from exc
    if not range_class(out).mediocre:
        raise ValueError("rewrite unavailable: outside mediocre range")
    return out


def absorb_adjacent(desc: InductionDescriptor, side: str) -> InductionDescriptor:
    """Swap a neighbour segment contained in nu_j across the pivot block.

    side="next" requires nu_{j+1} inside nu_j and produces blocks
    (..., (q_{j+1}, 0), (p_j - q_{j+1}, q_j + q_{j+1}), ...) carrying
    nu_{j+1} then nu_j; side="prev" is the mirror image.  The module is
    unchanged when the result stays mediocre.
    """
    j = desc.d.pivot()
    if j is None:
        raise ValueError("datum is not holomorphic")
    segs = segments_of(desc)
    blocks = list(desc.d.blocks)
    p_j, q_j = blocks[j]
    if side == "next":
        if j + 1 >= len(blocks):
            raise ValueError("no next block")
        a_next = blocks[j + 1][0] + blocks[j + 1][1]
        if not segs[j].as_multiset().contains(segs[j + 1].as_multiset()):
            raise ValueError("next segment not contained in pivot segment")
        if p_j < a_next:
            raise ValueError("pivot has too few plus parts for the swap")
        new_blocks = blocks[:j] + [(a_next, 0), (p_j - a_next, q_j + a_next)] + blocks[j + 2:]
        new_segs = segs[:j] + [segs[j + 1], segs[j]] + segs[j + 2:]
    elif side == "prev":
        if j == 0:
            raise ValueError("no previous block")
        a_prev = blocks[j - 1][0] + blocks[j - 1][1]
        if not segs[j].as_multiset().contains(segs[j - 1].as_multiset()):
            raise ValueError("previous segment not contained in pivot segment")
        if q_j < a_prev:
            raise ValueError("pivot has too few minus parts for the swap")
        new_blocks = blocks[:j - 1] + [(p_j + a_prev, q_j - a_prev), (0, a_prev)] + blocks[j + 1:]
        new_segs = segs[:j - 1] + [segs[j], segs[j - 1]] + segs[j + 1:]
    else:
        raise ValueError("side must be 'next' or 'prev'")
    out = _descriptor_from_segments(desc.d.sig, new_blocks, new_segs)
    if not range_class(out).mediocre:
        raise ValueError("rewrite unavailable: outside mediocre range")
    return out


def invariants_preserved(a: InductionDescriptor, b: InductionDescriptor) -> bool:
    """True when two mediocre data normalize to the same invariant pair."""
    out_a, out_b = tableau_pair(a), tableau_pair(b)
    if out_a.is_zero or out_b.is_zero:
        return out_a.is_zero == out_b.is_zero
    return as_pair_equal((out_a.ann, out_a.as_tab), (out_b.ann, out_b.as_tab))
