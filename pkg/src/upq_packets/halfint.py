"""Exact arithmetic in (1/2)Z, segments, and finite multisets of half-integers.

Every quantity that can be a strict half-integer (tableau entries,
infinitesimal-character coordinates) is stored as its doubled integer value,
so all arithmetic and comparisons stay exact.  Segments are integer-step
intervals [a, a+n] regarded as multiplicity-free multisets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    twice: int

    @classmethod
    def whole(cls, k: int) -> "HalfInt":
        return cls(2 * k)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.twice + other.twice)
        return HalfInt(self.twice + 2 * other)

    def __radd__(self, other: int) -> "HalfInt":
        return self.__add__(other)

    def __sub__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.twice - other.twice)
        return HalfInt(self.twice - 2 * other)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def to_json(self) -> dict:
        return {"twice": self.twice}

    @classmethod
    def from_json(cls, obj: dict) -> "HalfInt":
        return cls(int(obj["twice"]))


def half(twice: int) -> HalfInt:
    """Shorthand constructor from the doubled value."""
    return HalfInt(twice)


@dataclass(frozen=True)
class Segment:
    """The interval [start, start + length - 1] stepping by 1.

    A segment is always multiplicity free.  length == 0 denotes the empty
    segment, normalized to start at 0 so empties compare equal.
    """

    start: HalfInt
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("segment length must be nonnegative")
        if self.length == 0 and self.start.twice != 0:
            object.__setattr__(self, "start", HalfInt(0))

    @classmethod
    def empty(cls) -> "Segment":
        return cls(HalfInt(0), 0)

    @classmethod
    def from_bounds(cls, lo: HalfInt, hi: HalfInt) -> "Segment":
        """Segment [lo, hi]; empty when hi < lo.  Requires hi - lo integral."""
        if hi < lo:
            return cls.empty()
        if (hi.twice - lo.twice) % 2 != 0:
            raise ValueError(f"bounds {lo}, {hi} differ by a non-integer")
        return cls(lo, (hi.twice - lo.twice) // 2 + 1)

    @property
    def is_empty(self) -> bool:
        return self.length == 0

    @property
    def end(self) -> HalfInt:
        if self.is_empty:
            raise ValueError("empty segment has no endpoint")
        return self.start + (self.length - 1)

    def members_desc(self) -> list[HalfInt]:
        return [self.start + k for k in range(self.length - 1, -1, -1)]

    def __contains__(self, value: HalfInt) -> bool:
        if self.is_empty:
            return False
        return self.start <= value <= self.end and (value.twice - self.start.twice) % 2 == 0

    def intersect(self, other: "Segment") -> "Segment":
        if self.is_empty or other.is_empty:
            return Segment.empty()
        if (self.start.twice - other.start.twice) % 2 != 0:
            return Segment.empty()
        lo = max(self.start, other.start)
        hi = min(self.end, other.end)
        return Segment.from_bounds(lo, hi)

    def as_multiset(self) -> "HalfIntMultiset":
        return HalfIntMultiset.from_values(self.members_desc())

    def __str__(self) -> str:
        if self.is_empty:
            return "[]"
        return f"[{self.start},{self.end}]"

    def to_json(self) -> dict:
        return {"start_twice": self.start.twice, "len": self.length}

    @classmethod
    def from_json(cls, obj: dict) -> "Segment":
        return cls(HalfInt(int(obj["start_twice"])), int(obj["len"]))


class SegmentRelation(NamedTuple):
    linked: bool
    leq: bool
    subset: bool


def seg_compare(s1: Segment, s2: Segment) -> SegmentRelation:
    """Linkedness, the [a,b] <= [c,d] order, and containment of s1 in s2.

    For [a,b] and [c,d]: linked iff c = b+1 or a = d+1; leq iff a <= c and
    b <= d; subset iff c <= a and b <= d.  Empty segments are never linked,
    are <= everything, and are contained in everything.
    """
    if s1.is_empty:
        return SegmentRelation(linked=False, leq=True, subset=True)
    if s2.is_empty:
        return SegmentRelation(linked=False, leq=False, subset=False)
    a, b = s1.start, s1.end
    c, d = s2.start, s2.end
    linked = c == b + 1 or a == d + 1
    return SegmentRelation(linked=linked, leq=a <= c and b <= d, subset=c <= a and b <= d)


@dataclass(frozen=True)
class HalfIntMultiset:
    """A finite multiset of half-integers.

    Canonical form: values strictly decreasing, multiplicities >= 1, matching
    the convention of listing entries largest first.
    """

    entries: tuple[tuple[HalfInt, int], ...]

    def __post_init__(self) -> None:
        for value, mult in self.entries:
            if mult < 1:
                raise ValueError("multiplicities must be positive")
        values = [v for v, _ in self.entries]
        if any(values[i] <= values[i + 1] for i in range(len(values) - 1)):
            raise ValueError("entries must be strictly decreasing by value")

    @classmethod
    def from_values(cls, values: Iterable[HalfInt]) -> "HalfIntMultiset":
        counts: dict[int, int] = {}
        for v in values:
            counts[v.twice] = counts.get(v.twice, 0) + 1
        return cls(tuple((HalfInt(t), m) for t, m in sorted(counts.items(), reverse=True)))

    @classmethod
    def empty(cls) -> "HalfIntMultiset":
        return cls(())

    @property
    def size(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    @property
    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for _, m in self.entries)

    def multiplicity(self, value: HalfInt) -> int:
        for v, m in self.entries:
            if v == value:
                return m
        return 0

    def values_desc(self) -> list[HalfInt]:
        out: list[HalfInt] = []
        for v, m in self.entries:
            out.extend([v] * m)
        return out

    def support_desc(self) -> list[HalfInt]:
        return [v for v, _ in self.entries]

    def __iter__(self) -> Iterator[HalfInt]:
        return iter(self.values_desc())

    def union(self, other: "HalfIntMultiset") -> "HalfIntMultiset":
        counts = {v.twice: m for v, m in self.entries}
        for v, m in other.entries:
            counts[v.twice] = counts.get(v.twice, 0) + m
        return HalfIntMultiset(tuple((HalfInt(t), m) for t, m in sorted(counts.items(), reverse=True)))

    def intersection(self, other: "HalfIntMultiset") -> "HalfIntMultiset":
        pairs = []
        for v, m in self.entries:
            k = min(m, other.multiplicity(v))
            if k:
                pairs.append((v, k))
        return HalfIntMultiset(tuple(pairs))

    def difference(self, other: "HalfIntMultiset") -> "HalfIntMultiset":
        pairs = []
        for v, m in self.entries:
            k = m - other.multiplicity(v)
            if k > 0:
                pairs.append((v, k))
        return HalfIntMultiset(tuple(pairs))

    def contains(self, other: "HalfIntMultiset") -> bool:
        return all(self.multiplicity(v) >= m for v, m in other.entries)

    def is_segment(self) -> bool:
        """True iff this multiset is exactly a segment (consecutive, all mult 1)."""
        if not self.is_multiplicity_free:
            return False
        vals = self.support_desc()
        return all(vals[i].twice - vals[i + 1].twice == 2 for i in range(len(vals) - 1))

    def as_segment(self) -> Segment:
        if self.is_empty:
            return Segment.empty()
        if not self.is_segment():
            raise ValueError(f"{self} is not a segment")
        return Segment(self.support_desc()[-1], self.size)

    def __str__(self) -> str:
        parts = []
        for v, m in self.entries:
            parts.append(str(v) if m == 1 else f"{v}:{m}")
        return "{" + ",".join(parts) + "}"

    def to_json(self) -> list:
        return [{"twice": v.twice, "mult": m} for v, m in self.entries]

    @classmethod
    def from_json(cls, obj: list) -> "HalfIntMultiset":
        return cls(tuple((HalfInt(int(e["twice"])), int(e["mult"])) for e in obj))


class MsetAlgebra(NamedTuple):
    union: HalfIntMultiset
    intersection: HalfIntMultiset
    difference: HalfIntMultiset
    B_mult_free: bool


def mset_algebra(A: HalfIntMultiset, B: HalfIntMultiset) -> MsetAlgebra:
    """Union, intersection and A-minus-B under multiset semantics."""
    return MsetAlgebra(
        union=A.union(B),
        intersection=A.intersection(B),
        difference=A.difference(B),
        B_mult_free=B.is_multiplicity_free,
    )


def _canonical_part_key(seg: Segment) -> tuple[int, int]:
    # (t, a) with t = sum of endpoints; parts are listed with t decreasing,
    # then lengths decreasing.
    t_twice = seg.start.twice + seg.end.twice
    return (-t_twice, -seg.length)


def _partition_sort_key(parts: list[Segment]) -> list[tuple[int, int]]:
    return [(seg.start.twice + seg.end.twice, seg.length) for seg in parts]


def partition_into_segments(m: HalfIntMultiset) -> list[list[Segment]]:
    """All multiset partitions of m whose parts are segments.

    Each partition appears once (as a multiset of parts).  Parts are listed
    in the canonical order used for A-parameter summands; the list of
    partitions is sorted lexicographically by the parts' (t, a) keys so the
    output order is reproducible.
    """
    results: list[list[Segment]] = []
    counts = {v.twice: mult for v, mult in m.entries}

    def rec(acc: list[Segment], last: tuple[int, int] | None) -> None:
        live = [t for t, c in counts.items() if c > 0]
        if not live:
            results.append(sorted(acc, key=_canonical_part_key))
            return
        top = max(live)
        # Parts sharing a top value must be consumed longest first; this makes
        # each multiset of parts arise along exactly one recursion path.
        max_len = last[1] if last is not None and last[0] == top else m.size
        length = 0
        while length < max_len:
            t = top - 2 * length
            if counts.get(t, 0) <= 0:
                break
            length += 1
            for k in range(length):
                counts[top - 2 * k] -= 1
            rec(acc + [Segment(HalfInt(top - 2 * (length - 1)), length)], (top, length))
            for k in range(length):
                counts[top - 2 * k] += 1

    rec([], None)
    results.sort(key=_partition_sort_key)
    return results
