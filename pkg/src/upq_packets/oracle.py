"""Exhaustive desk-scale verification of the closed-form classification.

The sweep pits the closed-form theorems (packet membership by the gap
cases, lowest K-type extraction) against the tableau pipeline, which
computes the complete invariant pair directly and is therefore ground
truth.  It also checks the structural properties promised by the other
modules: the two-block nonvanishing criterion, the realize/K-type round
trip, the shape facts for lowest weight signed tableaux, preservation of
invariants under block rewrites, and the holomorphic-candidate properties.

Every instance is an independent pure computation; the instance space is
partitioned by signature, so signatures can be processed by parallel
workers and merged in signature order without affecting the report.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from multiprocessing import Pool

from .cohind import (InductionDescriptor, ThetaData, absorb_adjacent,
                     invariants_preserved, lowest_weight_invariants,
                     normalize_blocks, range_class, realize_lowest_weight,
                     segments_of, holomorphic_lowest_ktype, tableau_pair)
from .errors import InternalInconsistencyError
from .halfint import HalfInt, HalfIntMultiset, Segment
from .packets import (AParameter, PacketMember, contains_lowest_weight,
                      d_zero, good_parameters_with_inf_char, inf_char,
                      lowest_weight_of_packet, oracle_contains, packet)
from .tableaux import as_pair_equal, trapa_normalize
from .weights import (GroupSignature, KWeight, inf_char_of_lowest_weight,
                      is_unitarizable, kweight_from_pq, weight_stats)


@dataclass(frozen=True)
class SweepConfig:
    max_N: int
    weight_window: int
    char_window: HalfInt

    def __post_init__(self) -> None:
        if self.max_N < 1 or self.weight_window < 0 or self.char_window.twice < 0:
            raise ValueError("bad sweep configuration")

    def to_json(self) -> dict:
        return {"max_N": self.max_N, "weight_window": self.weight_window,
                "char_window_twice": self.char_window.twice}


@dataclass
class SweepReport:
    config: dict
    instances_checked: int = 0
    mismatches: list[dict] = field(default_factory=list)
    property_failures: list[dict] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.property_failures

    def bump(self, key: str, by: int = 1) -> None:
        self.instances_checked += by
        self.counts[key] = self.counts.get(key, 0) + by

    def merge(self, other: "SweepReport") -> None:
        self.instances_checked += other.instances_checked
        self.mismatches.extend(other.mismatches)
        self.property_failures.extend(other.property_failures)
        for key, val in other.counts.items():
            self.counts[key] = self.counts.get(key, 0) + val

    def to_json(self) -> dict:
        return {"config": self.config,
                "instances_checked": self.instances_checked,
                "counts": dict(sorted(self.counts.items())),
                "mismatches": self.mismatches,
                "property_failures": self.property_failures,
                "ok": self.ok}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def dominant_weights(sig: GroupSignature, window: int) -> list[KWeight]:
    """All dominant weights with every coordinate in [-window, window]."""
    rng = range(window, -window - 1, -1)
    p_sides = [c for c in itertools.combinations_with_replacement(rng, sig.p)]
    q_sides = [c for c in itertools.combinations_with_replacement(rng, sig.q)]
    return [KWeight(sig, tuple(ps) + tuple(qs)) for ps in p_sides for qs in q_sides]


def _segments_in_window(n: int, window: HalfInt) -> list[Segment]:
    # Segments over the half-integer grid Z + (N-1)/2 within [-window, window].
    lo, hi = -window.twice, window.twice
    out = []
    for start in range(lo, hi + 1):
        if (start - (n - 1)) % 2 != 0:
            continue
        for length in range(1, n + 1):
            if start + 2 * (length - 1) > hi:
                break
            out.append(Segment(HalfInt(start), length))
    return out


def good_parameters_in_window(sig: GroupSignature, window: HalfInt) -> list[AParameter]:
    """All good parameters with every character coordinate in the window."""
    n = sig.N
    segs = _segments_in_window(n, window)
    keyed = sorted(segs, key=lambda s: (-(s.start.twice + s.end.twice), -s.length))
    out: list[AParameter] = []

    def rec(i: int, remaining: int, acc: list[Segment]) -> None:
        if remaining == 0:
            out.append(AParameter.from_summands(
                sig, [((s.start.twice + s.end.twice) // 2, s.length) for s in acc]))
            return
        for k in range(i, len(keyed)):
            s = keyed[k]
            if s.length <= remaining:
                acc.append(s)
                rec(k, remaining - s.length, acc)
                acc.pop()

    rec(0, n, [])
    return out


def _sub_multisets_of_size(chi: HalfIntMultiset, size: int) -> list[HalfIntMultiset]:
    entries = list(chi.entries)

    def rec(i: int, remaining: int, acc: list[tuple[HalfInt, int]]):
        if remaining == 0:
            yield HalfIntMultiset(tuple(acc))
            return
        if i == len(entries):
            return
        v, mult = entries[i]
        for k in range(min(mult, remaining), -1, -1):
            if k:
                acc.append((v, k))
            yield from rec(i + 1, remaining - k, acc)
            if k:
                acc.pop()

    return list(rec(0, size, []))


def oracle_lowest_weights(psi: AParameter) -> list[KWeight]:
    """All unitarizable dominant weights whose lowest weight module lies in
    the packet, found by brute force over the splittings of the character."""
    chi = inf_char(psi)
    sig = psi.sig
    found = []
    for P in _sub_multisets_of_size(chi, sig.p):
        w = kweight_from_pq(sig, P, chi.difference(P))
        if w is None or not is_unitarizable(w):
            continue
        if oracle_contains(psi, w):
            found.append(w)
    return found


def _basic_d0_properties(psi: AParameter, w: KWeight) -> list[str]:
    """The structural facts about the holomorphic candidate that hold
    whenever the packet contains the lowest weight module of w.  Returns
    the labels of violated items."""
    dz = d_zero(psi)
    if dz.j is None:
        return []
    j = dz.j
    lt = HalfIntMultiset.empty()
    for i in range(j - 1):
        lt = lt.union(psi.segment(i).as_multiset())
    mid = psi.segment(j - 1).as_multiset()
    gt = HalfIntMultiset.empty()
    for i in range(j, psi.r):
        gt = gt.union(psi.segment(i).as_multiset())
    q_j = dz.d0.blocks[j - 1][1]
    i_seg = weight_stats(w).I.as_multiset()
    lt_cap_gt = lt.intersection(gt)

    bad = []
    if not (lt.is_multiplicity_free and gt.is_multiplicity_free):
        bad.append("1:flanks-multiplicity-free")
    if gt.contains(mid) and q_j != 0:
        bad.append("2:mid-in-right-forces-qj-zero")
    if lt.contains(mid):
        bad.append("3:mid-not-in-left")
    if not lt.union(gt).contains(i_seg):
        bad.append("4:I-in-flanks")
    if not lt_cap_gt.is_empty and not (gt.contains(mid) and q_j == 0):
        bad.append("5:flank-overlap-forces-right")
    if (not lt_cap_gt.intersection(i_seg).is_empty
            and not mid.intersection(i_seg).is_empty):
        if not (i_seg.contains(mid) and gt.contains(i_seg) and q_j == 0):
            bad.append("6:I-split-forces-right")
    if lt_cap_gt.intersection(i_seg).is_empty and not mid.contains(i_seg):
        bad.append("7:I-in-mid")
    if not i_seg.is_empty and mid.intersection(i_seg).is_empty:
        bad.append("8:I-meets-mid")
    return bad


def _check_lambda_side(sig: GroupSignature, w: KWeight, report: SweepReport,
                       lw_cache: dict) -> None:
    key = (sig.p, sig.q, w.lam)
    chi = inf_char_of_lowest_weight(w)
    st = weight_stats(w)
    if chi != st.P.union(st.Q):
        report.property_failures.append(
            {"kind": "inf-char-vs-PQ", "lambda": list(w.lam),
             "p": sig.p, "q": sig.q})
        return

    try:
        pair = lowest_weight_invariants(w)
        lw_cache[key] = pair
    except InternalInconsistencyError as exc:
        report.property_failures.append(
            {"kind": "lowest-weight-invariants", "lambda": list(w.lam),
             "p": sig.p, "q": sig.q, "error": str(exc)})
        return

    desc = realize_lowest_weight(w)
    round_trip = holomorphic_lowest_ktype(desc)
    if round_trip.lam != w.lam:
        report.property_failures.append(
            {"kind": "round-trip", "lambda": list(w.lam), "p": sig.p,
             "q": sig.q, "got": list(round_trip.lam)})
    seg_union = HalfIntMultiset.empty()
    for s in segments_of(desc):
        seg_union = seg_union.union(s.as_multiset())
    if seg_union != chi:
        report.property_failures.append(
            {"kind": "realization-inf-char", "lambda": list(w.lam),
             "p": sig.p, "q": sig.q})

    try:
        five = normalize_blocks(desc)
    except ValueError:
        five = None
    if five is not None and not invariants_preserved(desc, five):
        report.property_failures.append(
            {"kind": "normalize-blocks", "lambda": list(w.lam),
             "p": sig.p, "q": sig.q, "blocks": [list(b) for b in five.d.blocks]})

    for psi in good_parameters_with_inf_char(sig, chi):
        report.bump("membership-pairs")
        try:
            theorem = contains_lowest_weight(psi, w)
            oracle = oracle_contains(psi, w)
        except InternalInconsistencyError as exc:
            report.property_failures.append(
                {"kind": "membership-error", "psi": psi.to_json(),
                 "lambda": list(w.lam), "error": str(exc)})
            continue
        if theorem != oracle:
            report.mismatches.append(
                {"kind": "theorem-main", "psi": psi.to_json(),
                 "lambda": list(w.lam), "theorem": theorem, "oracle": oracle})
        if theorem:
            # Round trip: a packet that contains w must extract exactly w.
            try:
                back = lowest_weight_of_packet(psi)
            except InternalInconsistencyError as exc:
                back = None
                report.property_failures.append(
                    {"kind": "extraction-error", "psi": psi.to_json(),
                     "error": str(exc)})
            if back is None or back.lam != w.lam:
                report.property_failures.append(
                    {"kind": "round-trip-extraction", "psi": psi.to_json(),
                     "lambda": list(w.lam),
                     "extracted": list(back.lam) if back else None})
        if oracle:
            for label in _basic_d0_properties(psi, w):
                report.property_failures.append(
                    {"kind": "holomorphic-candidate-property", "item": label,
                     "psi": psi.to_json(), "lambda": list(w.lam)})


def _check_psi_side(sig: GroupSignature, psi: AParameter, report: SweepReport,
                    lw_cache: dict) -> None:
    report.bump("packets")
    try:
        claimed = lowest_weight_of_packet(psi)
        oracle_hits = oracle_lowest_weights(psi)
    except InternalInconsistencyError as exc:
        report.property_failures.append(
            {"kind": "extraction-error", "psi": psi.to_json(), "error": str(exc)})
        return
    if len(oracle_hits) > 1:
        report.property_failures.append(
            {"kind": "packet-uniqueness", "psi": psi.to_json(),
             "lambdas": [list(w.lam) for w in oracle_hits]})
    expected = oracle_hits[0].lam if oracle_hits else None
    got = claimed.lam if claimed is not None else None
    if got != expected:
        report.mismatches.append(
            {"kind": "lowest-weight-extraction", "psi": psi.to_json(),
             "theorem": list(got) if got else None,
             "oracle": list(expected) if expected else None})
    if claimed is not None:
        try:
            back = contains_lowest_weight(psi, claimed)
        except InternalInconsistencyError as exc:
            back = False
            report.property_failures.append(
                {"kind": "membership-error", "psi": psi.to_json(),
                 "lambda": list(claimed.lam), "error": str(exc)})
        if not back:
            report.property_failures.append(
                {"kind": "round-trip-membership", "psi": psi.to_json(),
                 "lambda": list(claimed.lam)})

    # Packet-level uniqueness: at most one nonzero member can carry the
    # invariants of any lowest weight module, and it must be the
    # holomorphic candidate.
    try:
        members = packet(psi)
    except InternalInconsistencyError as exc:
        report.property_failures.append(
            {"kind": "multiplicity-one", "psi": psi.to_json(), "error": str(exc)})
        return
    d0_blocks = d_zero(psi).d0.blocks
    candidates: list[tuple[PacketMember, KWeight]] = []
    chi = inf_char(psi)
    for P in _sub_multisets_of_size(chi, sig.p):
        w = kweight_from_pq(sig, P, chi.difference(P))
        if w is None or not is_unitarizable(w):
            continue
        key = (sig.p, sig.q, w.lam)
        if key not in lw_cache:
            lw_cache[key] = lowest_weight_invariants(w)
        pair = lw_cache[key]
        for m in members:
            if m.nonzero and as_pair_equal(m.invariants, pair):
                candidates.append((m, w))
    if len(candidates) > 1:
        report.property_failures.append(
            {"kind": "packet-member-uniqueness", "psi": psi.to_json(),
             "members": [list(map(list, m.d.blocks)) for m, _ in candidates]})
    for m, w in candidates:
        if m.d.blocks != d0_blocks:
            report.property_failures.append(
                {"kind": "lowest-weight-member-not-holomorphic",
                 "psi": psi.to_json(), "member": [list(b) for b in m.d.blocks]})
        if not d_zero(psi).d0.is_holomorphic():
            report.property_failures.append(
                {"kind": "holomorphic-candidate", "psi": psi.to_json()})


def two_block_data(max_N: int, value_span: int = 8) -> list[InductionDescriptor]:
    """Every two-block datum with N <= max_N and mediocre values, the first
    value ranging over a window of the given width around the second."""
    out = []
    for n in range(2, max_N + 1):
        for a1 in range(1, n):
            a2 = n - a1
            for p1 in range(a1 + 1):
                for p2 in range(a2 + 1):
                    sig = GroupSignature(p1 + p2, (a1 - p1) + (a2 - p2))
                    d = ThetaData(sig, ((p1, a1 - p1), (p2, a2 - p2)))
                    for v1 in range(-(value_span // 2), value_span - value_span // 2):
                        desc = InductionDescriptor(d, (v1, 0))
                        if range_class(desc).mediocre:
                            out.append(desc)
    return out


def _check_two_block(desc: InductionDescriptor, report: SweepReport) -> None:
    report.bump("two-block")
    (p1, q1), (p2, q2) = desc.d.blocks
    s1, s2 = segments_of(desc)
    sing = s1.as_multiset().intersection(s2.as_multiset()).size
    expected = min(p1, q2) + min(q1, p2) >= sing
    try:
        out = tableau_pair(desc)
    except InternalInconsistencyError as exc:
        report.property_failures.append(
            {"kind": "two-block-error", "descriptor": desc.to_json(),
             "error": str(exc)})
        return
    if (not out.is_zero) != expected:
        report.property_failures.append(
            {"kind": "two-block-nonvanishing", "descriptor": desc.to_json(),
             "expected_nonzero": expected, "got_nonzero": not out.is_zero})
    if not out.is_zero:
        # Idempotence: normalizing the normalized stack changes nothing.
        again = trapa_normalize(out.stack)
        if again.is_zero or not as_pair_equal((again.ann, again.as_tab),
                                              (out.ann, out.as_tab)):
            report.property_failures.append(
                {"kind": "idempotence", "descriptor": desc.to_json()})

    if desc.d.is_holomorphic():
        for side in ("next", "prev"):
            try:
                swapped = absorb_adjacent(desc, side)
            except ValueError:
                continue
            if not invariants_preserved(desc, swapped):
                report.property_failures.append(
                    {"kind": "absorb-adjacent", "descriptor": desc.to_json(),
                     "side": side})


def sweep_signature(sig: GroupSignature, cfg: SweepConfig) -> SweepReport:
    """The part of the sweep attached to one signature."""
    report = SweepReport(config=cfg.to_json())
    lw_cache: dict = {}
    for w in dominant_weights(sig, cfg.weight_window):
        if not is_unitarizable(w):
            continue
        report.bump("weights")
        _check_lambda_side(sig, w, report, lw_cache)
    for psi in good_parameters_in_window(sig, cfg.char_window):
        _check_psi_side(sig, psi, report, lw_cache)
    return report


def _sweep_signature_task(args: tuple[int, int, dict]) -> SweepReport:
    p, q, cfg_json = args
    cfg = SweepConfig(cfg_json["max_N"], cfg_json["weight_window"],
                      HalfInt(cfg_json["char_window_twice"]))
    return sweep_signature(GroupSignature(p, q), cfg)


def sweep_verify(cfg: SweepConfig, jobs: int = 1) -> SweepReport:
    """Run the full verification sweep.

    Signatures are enumerated small to large, so the first recorded
    disagreement is already a minimal counterexample for its kind.  With
    jobs > 1 the per-signature work runs in a process pool; reports are
    merged in signature order, so the output is identical either way.
    """
    sigs = [(p, n - p) for n in range(1, cfg.max_N + 1) for p in range(n + 1)]
    report = SweepReport(config=cfg.to_json())
    if jobs > 1:
        with Pool(jobs) as pool:
            parts = pool.map(_sweep_signature_task,
                             [(p, q, cfg.to_json()) for p, q in sigs])
        for part in parts:
            report.merge(part)
    else:
        for p, q in sigs:
            report.merge(sweep_signature(GroupSignature(p, q), cfg))
    for desc in two_block_data(cfg.max_N):
        _check_two_block(desc, report)
    return report
