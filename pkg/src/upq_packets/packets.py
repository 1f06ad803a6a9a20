"""Good A-parameters of U(p,q) and their packets of cohomological inductions.

A good parameter is a formal sum of r summands (t_i, a_i) with sum of a_i
equal to N and every t_i + a_i + N even, listed with t_i decreasing and a_i
decreasing among equal t_i.  Each choice d = ((p_i, q_i))_i with
p_i + q_i = a_i produces one packet member; the member's block values are
(t_i + a_i - N)/2 + a_{<i} and its component-group character value on the
i-th generator is (-1)^(p_i a_{<i} + q_i (a_{<i}+1) + a_i(a_i-1)/2).

The classification theorems implemented here decide, in closed form, which
packets contain a given unitary lowest weight module and which lowest
K-type (if any) a packet can contain.  The tableau pipeline provides the
independent ground truth for both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cohind import (InductionDescriptor, ThetaData, lowest_weight_invariants,
                     segments_of, tableau_pair)
from .errors import InternalInconsistencyError
from .halfint import HalfInt, HalfIntMultiset, Segment, partition_into_segments
from .tableaux import AntiTableau, SignedTableau, as_pair_equal
from .weights import (GroupSignature, KWeight, inf_char_of_lowest_weight,
                      is_unitarizable, kweight_from_pq, weight_stats)


@dataclass(frozen=True)
class AParameter:
    """A good A-parameter, canonically ordered."""

    sig: GroupSignature
    summands: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        n = self.sig.N
        if sum(a for _, a in self.summands) != n:
            raise ValueError("summand dimensions must sum to N")
        for t, a in self.summands:
            if a < 1:
                raise ValueError("summand dimension must be positive")
            if (t + a + n) % 2 != 0:
                raise ValueError(f"summand (t={t}, a={a}) violates the parity "
                                 f"condition t + a + N even")
        for i in range(len(self.summands) - 1):
            t1, a1 = self.summands[i]
            t2, a2 = self.summands[i + 1]
            if t1 < t2 or (t1 == t2 and a1 < a2):
                raise ValueError("summands must be listed with t decreasing, "
                                 "a decreasing among equal t")

    @classmethod
    def from_summands(cls, sig: GroupSignature,
                      summands: list[tuple[int, int]]) -> "AParameter":
        ordered = sorted(summands, key=lambda ta: (-ta[0], -ta[1]))
        return cls(sig, tuple(ordered))

    @property
    def r(self) -> int:
        return len(self.summands)

    def sizes(self) -> list[int]:
        return [a for _, a in self.summands]

    def segment(self, i: int) -> Segment:
        """nu_i = [(t_i - a_i + 1)/2, (t_i + a_i - 1)/2]."""
        t, a = self.summands[i]
        return Segment(HalfInt(t - a + 1), a)

    def to_json(self) -> dict:
        return {"p": self.sig.p, "q": self.sig.q,
                "summands": [{"t": t, "a": a} for t, a in self.summands]}

    @classmethod
    def from_json(cls, obj: dict) -> "AParameter":
        sig = GroupSignature(int(obj["p"]), int(obj["q"]))
        return cls.from_summands(sig, [(int(s["t"]), int(s["a"])) for s in obj["summands"]])

    def __str__(self) -> str:
        return " + ".join(f"chi_{t}*S_{a}" for t, a in self.summands)


def inf_char(psi: AParameter) -> HalfIntMultiset:
    """The infinitesimal character: the union of the summand segments."""
    out = HalfIntMultiset.empty()
    for i in range(psi.r):
        out = out.union(psi.segment(i).as_multiset())
    return out


def enumerate_D(psi: AParameter) -> list[ThetaData]:
    """All ((p_i, q_i))_i with p_i + q_i = a_i summing to the signature,
    in decreasing lexicographic order of the p-parts."""
    sizes = psi.sizes()
    p_total = psi.sig.p
    suffix = [0] * (psi.r + 1)
    for i in range(psi.r - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]
    out: list[ThetaData] = []

    def rec(i: int, remaining: int, acc: list[tuple[int, int]]) -> None:
        if i == psi.r:
            if remaining == 0:
                out.append(ThetaData(psi.sig, tuple(acc)))
            return
        hi = min(sizes[i], remaining)
        lo = max(0, remaining - suffix[i + 1])
        for pk in range(hi, lo - 1, -1):
            acc.append((pk, sizes[i] - pk))
            rec(i + 1, remaining - pk, acc)
            acc.pop()

    rec(0, p_total, [])
    return out


@dataclass(frozen=True)
class DZero:
    j: Optional[int]  # 1-based straddling index; None when p = 0
    d0: ThetaData


def d_zero(psi: AParameter) -> DZero:
    """The unique holomorphic candidate: plus parts fill the first blocks.

    j is minimal with a_1 + ... + a_j >= p; the straddling block gets
    (p - a_{<j}, q - a_{>j}) and everything after is pure minus.  For p = 0
    there is no straddling index and the datum is all minus."""
    sizes = psi.sizes()
    p, q = psi.sig.p, psi.sig.q
    if p == 0:
        return DZero(None, ThetaData(psi.sig, tuple((0, a) for a in sizes)))
    before = 0
    for idx, a in enumerate(sizes):
        if before + a >= p:
            after = sum(sizes[idx + 1:])
            blocks = [(x, 0) for x in sizes[:idx]]
            blocks.append((p - before, q - after))
            blocks += [(0, x) for x in sizes[idx + 1:]]
            return DZero(idx + 1, ThetaData(psi.sig, tuple(blocks)))
        before += a
    raise AssertionError("unreachable: sizes sum to N >= p")


def epsilon(psi: AParameter, d: ThetaData) -> tuple[int, ...]:
    """The component-group character attached to the member A_d(psi)."""
    out = []
    before = 0
    for (pk, qk), (_, a) in zip(d.blocks, psi.summands):
        exponent = pk * before + qk * (before + 1) + a * (a - 1) // 2
        out.append(1 if exponent % 2 == 0 else -1)
        before += a
    return tuple(out)


@dataclass(frozen=True)
class PacketMember:
    d: ThetaData
    descriptor: InductionDescriptor
    epsilon: tuple[int, ...]
    nonzero: bool
    invariants: Optional[tuple[AntiTableau, SignedTableau]]

    def to_json(self) -> dict:
        obj = {"descriptor": self.descriptor.to_json(),
               "epsilon": list(self.epsilon),
               "nonzero": self.nonzero}
        if self.invariants is not None:
            ann, as_tab = self.invariants
            obj["ann"] = ann.to_json()
            obj["as"] = as_tab.to_json()
        return obj


def member(psi: AParameter, d: ThetaData) -> PacketMember:
    """The packet member attached to d, with its tableau invariants."""
    if d.sig != psi.sig or [pk + qk for pk, qk in d.blocks] != psi.sizes():
        raise ValueError(f"{d.blocks} does not belong to D({psi})")
    values = []
    before = 0
    n = psi.sig.N
    for t, a in psi.summands:
        values.append((t + a - n) // 2 + before)
        before += a
    desc = InductionDescriptor(d, tuple(values))
    segs = segments_of(desc)
    for i in range(psi.r):
        if segs[i] != psi.segment(i):
            raise InternalInconsistencyError(
                f"segment {segs[i]} of the member differs from nu_{i + 1} = "
                f"{psi.segment(i)}")
    out = tableau_pair(desc)
    invariants = None if out.is_zero else (out.ann, out.as_tab)
    return PacketMember(d, desc, epsilon(psi, d), not out.is_zero, invariants)


def packet(psi: AParameter) -> list[PacketMember]:
    """All members, in enumerate_D order.  Nonzero members must have pairwise
    distinct invariant pairs (multiplicity one); a repeat raises."""
    members = [member(psi, d) for d in enumerate_D(psi)]
    live = [m for m in members if m.nonzero]
    for i in range(len(live)):
        for j in range(i + 1, len(live)):
            if as_pair_equal(live[i].invariants, live[j].invariants):
                raise InternalInconsistencyError(
                    f"members {live[i].d.blocks} and {live[j].d.blocks} of "
                    f"{psi} share an invariant pair")
    return members


def _nu_parts(psi: AParameter, j: int) -> tuple[HalfIntMultiset, HalfIntMultiset, HalfIntMultiset]:
    """(nu_{<j}, nu_j, nu_{>j}) for 1-based j."""
    lt = HalfIntMultiset.empty()
    for i in range(j - 1):
        lt = lt.union(psi.segment(i).as_multiset())
    mid = psi.segment(j - 1).as_multiset()
    gt = HalfIntMultiset.empty()
    for i in range(j, psi.r):
        gt = gt.union(psi.segment(i).as_multiset())
    return lt, mid, gt


def d_zero_nonvanishing(psi: AParameter) -> bool:
    """Closed-form nonvanishing of the holomorphic member.

    Requires nu_{<j} and nu_{>j} multiplicity free,
    |nu_j /\\ nu_{>j}| <= p_j, |nu_j /\\ nu_{<j}| <= q_j, and no value
    common to all three parts.  The last condition is forced by the
    complete invariants: a holomorphic datum builds a signed tableau with
    at most two columns, and its antitableau twin cannot hold any entry
    three times; a value in all three parts has multiplicity three.  When
    the character matches a lowest weight module (multiplicity at most
    two), the condition is vacuous.
    """
    dz = d_zero(psi)
    if dz.j is None:
        segs = [psi.segment(i).as_multiset() for i in range(psi.r)]
        total = HalfIntMultiset.empty()
        for s in segs:
            total = total.union(s)
        return total.is_multiplicity_free
    j = dz.j
    lt, mid, gt = _nu_parts(psi, j)
    p_j, q_j = dz.d0.blocks[j - 1]
    if not (lt.is_multiplicity_free and gt.is_multiplicity_free):
        return False
    if not mid.intersection(lt).intersection(gt).is_empty:
        return False
    return mid.intersection(gt).size <= p_j and mid.intersection(lt).size <= q_j


def oracle_member_pair(psi: AParameter) -> Optional[tuple[AntiTableau, SignedTableau]]:
    """Invariants of the holomorphic member, None when it vanishes."""
    m = member(psi, d_zero(psi).d0)
    return m.invariants


def contains_lowest_weight(psi: AParameter, w: KWeight) -> bool:
    """Does the packet of psi contain the lowest weight module of w?

    Requires the infinitesimal characters to match and the holomorphic
    member to be nonzero; then the answer depends on how the gap compares
    with N - p' and N - q':

    * gap in [N-p', N-q'):  [lambda_p - (N-1)/2, lambda_{p+1} + (N-1)/2]
      inside nu_j inside P';
    * gap in [N-q', N-p'):  nu_{<=j} = P, or the same bracket inside nu_j
      inside Q';
    * gap >= both:          P inside nu_{<=j} inside P || I, or
      I inside nu_j inside Q';
    * gap < both:           nu_j equals the bracket exactly.

    Degenerate signatures have no gap; they fall back to the tableau
    equality test.
    """
    if not is_unitarizable(w):
        raise ValueError(f"{w.lam} is not unitarizable")
    if inf_char(psi) != inf_char_of_lowest_weight(w):
        return False
    if not d_zero_nonvanishing(psi):
        return False
    sig = w.sig
    if sig.p == 0 or sig.q == 0:
        return oracle_contains(psi, w)

    st = weight_stats(w)
    n = sig.N
    gap = w.gap
    dz = d_zero(psi)
    assert dz.j is not None
    lt, mid, gt = _nu_parts(psi, dz.j)
    nu_le = lt.union(mid)
    bracket = Segment.from_bounds(
        HalfInt(2 * w.lam[sig.p - 1] - (n - 1)),
        HalfInt(2 * w.lam[sig.p] + (n - 1))).as_multiset()
    p_seg = st.P_seg.as_multiset()
    q_seg = st.Q_seg.as_multiset()
    i_seg = st.I.as_multiset()

    lo_p, lo_q = n - st.p_prime, n - st.q_prime
    if lo_p <= gap < lo_q:
        return mid.contains(bracket) and p_seg.contains(mid)
    if lo_q <= gap < lo_p:
        return nu_le == st.P or (mid.contains(bracket) and q_seg.contains(mid))
    if gap >= lo_p and gap >= lo_q:
        first = nu_le.contains(st.P) and st.P.union(i_seg).contains(nu_le)
        second = mid.contains(i_seg) and q_seg.contains(mid)
        return first or second
    return mid == bracket


def oracle_contains(psi: AParameter, w: KWeight) -> bool:
    """Ground truth: the holomorphic member's invariant pair equals the
    lowest weight module's pair.  Mismatched infinitesimal characters are
    an immediate False."""
    if not is_unitarizable(w):
        raise ValueError(f"{w.lam} is not unitarizable")
    if inf_char(psi) != inf_char_of_lowest_weight(w):
        return False
    pair = oracle_member_pair(psi)
    if pair is None:
        return False
    return as_pair_equal(pair, lowest_weight_invariants(w))


def _lambda_case4(psi: AParameter, lt: HalfIntMultiset,
                  mid: HalfIntMultiset, gt: HalfIntMultiset) -> KWeight:
    sig = psi.sig
    p, n = sig.p, sig.N
    sigma = lt.union(gt).values_desc()
    nu_vals = mid.values_desc()
    size = mid.size
    i0 = None
    for cand in range(1, size + 1):
        above = sum(1 for x in sigma if x > nu_vals[cand - 1])
        if size - cand + 1 + above == p:
            i0 = cand
            break
    if i0 is None:
        raise InternalInconsistencyError(
            f"no valid index i0 for {psi}; the classification formula "
            f"presupposes one exists")
    top = nu_vals[0]
    lam: list[int] = []
    for i in range(1, n + 1):
        if i < p - size + i0:
            val = sigma[i - 1].twice - (p - sig.q + 1) + 2 * i
        elif i <= p:
            val = top.twice + (n + 1) - 2 * size
        elif i <= p + i0 - 1:
            val = top.twice - (n - 1)
        else:
            val = sigma[i - size - 1].twice - (n + 1) - 2 * p + 2 * i
        if val % 2 != 0:
            raise InternalInconsistencyError(
                f"non-integral lowest K-type coordinate for {psi}")
        lam.append(val // 2)
    try:
        return KWeight(sig, tuple(lam))
    except ValueError as exc:
        raise InternalInconsistencyError(
            f"case-4 weight {lam} for {psi} is not dominant: {exc}") from exc


def lowest_weight_of_packet(psi: AParameter) -> Optional[KWeight]:
    """The lowest K-type of the unique unitary lowest weight module in the
    packet, or None when the packet has none.

    The packet has one exactly when nu_{<j} and nu_{>j} are multiplicity
    free, |nu_j /\\ nu_{>j}| <= p_j and |nu_j /\\ nu_{<j}| <= q_j; the
    K-type is recovered from the P/Q multisets dictated by which of the
    bounds are attained, or by the explicit coordinate formula in the
    interior case.
    """
    if not d_zero_nonvanishing(psi):
        return None
    sig = psi.sig
    dz = d_zero(psi)

    if dz.j is None:  # p = 0: everything sits on the Q side.
        w = kweight_from_pq(sig, HalfIntMultiset.empty(), inf_char(psi))
        if w is None or not is_unitarizable(w):
            return None
        return w if oracle_contains(psi, w) else None

    j = dz.j
    lt, mid, gt = _nu_parts(psi, j)
    p_j, q_j = dz.d0.blocks[j - 1]
    cap_gt = mid.intersection(gt)
    cap_lt = mid.intersection(lt)

    if q_j == 0:
        P, Q = lt.union(mid), gt
    elif p_j == cap_gt.size:
        P = lt.union(cap_gt)
        Q = mid.union(gt).difference(cap_gt)
    elif q_j == cap_lt.size:
        P = lt.union(mid).difference(cap_lt)
        Q = cap_lt.union(gt)
    else:
        w = _lambda_case4(psi, lt, mid, gt)
        if not is_unitarizable(w):
            raise InternalInconsistencyError(
                f"case-4 weight {w.lam} for {psi} is not unitarizable")
        return w

    w = kweight_from_pq(sig, P, Q)
    if w is None:
        raise InternalInconsistencyError(
            f"P = {P}, Q = {Q} for {psi} do not invert to a dominant weight")
    if not is_unitarizable(w):
        raise InternalInconsistencyError(
            f"recovered weight {w.lam} for {psi} is not unitarizable")
    return w


def good_parameters_with_inf_char(sig: GroupSignature,
                                  chi: HalfIntMultiset) -> list[AParameter]:
    """All good parameters whose infinitesimal character equals chi.

    Every partition of chi into segments gives one: a part [x, y] becomes
    the summand (t, a) = (x + y, length).  The parity condition holds
    automatically for characters of lowest weight modules.
    """
    out = []
    for parts in partition_into_segments(chi):
        summands = []
        for seg in parts:
            t_twice = seg.start.twice + seg.end.twice
            if t_twice % 2 != 0:
                raise ValueError(f"segment {seg} has non-integral endpoint sum")
            summands.append((t_twice // 2, seg.length))
        out.append(AParameter.from_summands(sig, summands))
    return out


def packets_containing(w: KWeight) -> list[AParameter]:
    """All good parameters whose packet contains the lowest weight module
    of w, enumerated through the segment partitions of its infinitesimal
    character."""
    if not is_unitarizable(w):
        raise ValueError(f"{w.lam} is not unitarizable")
    chi = inf_char_of_lowest_weight(w)
    return [psi for psi in good_parameters_with_inf_char(w.sig, chi)
            if contains_lowest_weight(psi, w)]
