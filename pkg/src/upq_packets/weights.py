"""Dominant K-weights for U(p)xU(q) and their derived invariants.

A lowest weight module is determined by its lowest K-type, a dominant
integral weight lambda.  From lambda we derive the multisets P, Q (whose
union is the infinitesimal character), the bottom segments P', Q', their
intersection I, and the unitarizability classification by the gap
lambda_p - lambda_{p+1}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .halfint import HalfInt, HalfIntMultiset, Segment


@dataclass(frozen=True)
class GroupSignature:
    """The pair (p, q) with N = p + q >= 1."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ValueError(f"bad signature ({self.p},{self.q})")

    @property
    def N(self) -> int:
        return self.p + self.q

    def rho(self) -> list[HalfInt]:
        """((N-1)/2, (N-3)/2, ..., -(N-1)/2)."""
        n = self.N
        return [HalfInt(n - 1 - 2 * k) for k in range(n)]

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}


@dataclass(frozen=True)
class KWeight:
    """A Delta_c^+-dominant integral weight of K = U(p) x U(q)."""

    sig: GroupSignature
    lam: tuple[int, ...]

    def __post_init__(self) -> None:
        p, q = self.sig.p, self.sig.q
        if len(self.lam) != p + q:
            raise ValueError("weight length must equal p+q")
        if any(self.lam[i] < self.lam[i + 1] for i in range(p - 1)):
            raise ValueError(f"p-side of {self.lam} is not weakly decreasing")
        if any(self.lam[i] < self.lam[i + 1] for i in range(p, p + q - 1)):
            raise ValueError(f"q-side of {self.lam} is not weakly decreasing")

    @property
    def gap(self) -> int:
        """lambda_p - lambda_{p+1}; requires both sides nonempty."""
        p, q = self.sig.p, self.sig.q
        if p == 0 or q == 0:
            raise ValueError("gap undefined when p = 0 or q = 0")
        return self.lam[p - 1] - self.lam[p]

    def to_json(self) -> dict:
        return {"p": self.sig.p, "q": self.sig.q, "lambda": list(self.lam)}

    @classmethod
    def from_json(cls, obj: dict) -> "KWeight":
        return cls(GroupSignature(int(obj["p"]), int(obj["q"])),
                   tuple(int(x) for x in obj["lambda"]))


@dataclass(frozen=True)
class WeightStats:
    p_prime: int
    q_prime: int
    P: HalfIntMultiset
    Q: HalfIntMultiset
    P_seg: Segment
    Q_seg: Segment
    I: Segment


def _p_entry(w: KWeight, i: int) -> HalfInt:
    # Entry attached to lambda_i on the p-side (1-based i <= p):
    # lambda_i - (N-1)/2 + (p-i).
    n, p = w.sig.N, w.sig.p
    return HalfInt(2 * w.lam[i - 1] - (n - 1) + 2 * (p - i))


def _q_entry(w: KWeight, i: int) -> HalfInt:
    # Entry attached to lambda_i on the q-side (1-based p < i <= N):
    # lambda_i + (p-q+1)/2 + (N-i).
    n, p, q = w.sig.N, w.sig.p, w.sig.q
    return HalfInt(2 * w.lam[i - 1] + (p - q + 1) + 2 * (n - i))


def weight_stats(w: KWeight) -> WeightStats:
    """p', q', the multisets P and Q, the segments P', Q' and I = P' /\\ Q'."""
    p, q, n = w.sig.p, w.sig.q, w.sig.N
    lam = w.lam
    p_prime = sum(1 for i in range(p) if lam[i] == lam[p - 1]) if p else 0
    q_prime = sum(1 for i in range(p, n) if lam[i] == lam[p]) if q else 0

    P = HalfIntMultiset.from_values(_p_entry(w, i) for i in range(1, p + 1))
    Q = HalfIntMultiset.from_values(_q_entry(w, i) for i in range(p + 1, n + 1))

    if p:
        p_start = HalfInt(2 * lam[p - 1] - (n - 1))
        P_seg = Segment(p_start, p_prime)
    else:
        P_seg = Segment.empty()
    if q:
        q_start = HalfInt(2 * lam[p] + (n + 1) - 2 * q_prime)
        Q_seg = Segment(q_start, q_prime)
    else:
        Q_seg = Segment.empty()

    return WeightStats(p_prime, q_prime, P, Q, P_seg, Q_seg, P_seg.intersect(Q_seg))


def inf_char_of_lowest_weight(w: KWeight) -> HalfIntMultiset:
    """Infinitesimal character of the lowest weight module with K-type w.

    The coordinates are lambda_1 + (p-q-1)/2, ..., lambda_p - (N-1)/2 on the
    p-side and lambda_{p+1} + (N-1)/2, ..., lambda_N + (p-q+1)/2 on the
    q-side; as a multiset this is P || Q.
    """
    p, n = w.sig.p, w.sig.N
    values = [_p_entry(w, i) for i in range(1, p + 1)]
    values += [_q_entry(w, i) for i in range(p + 1, n + 1)]
    return HalfIntMultiset.from_values(values)


class UnitarityClass(enum.Enum):
    NON_UNITARY = "non-unitary"
    UNITARY = "unitary"
    LIMIT_OF_DISCRETE_SERIES = "limit-of-discrete-series"
    DISCRETE_SERIES = "discrete-series"


def unitarity_class(w: KWeight) -> UnitarityClass:
    """Classify the lowest weight module by the gap lambda_p - lambda_{p+1}.

    Discrete series above N-1, limits at N-1, unitarizable down to
    N - p' - q', non-unitary below.  Degenerate signatures (p = 0 or q = 0)
    have no gap and are reported as UNITARY; is_degenerate distinguishes them.
    """
    if w.sig.p == 0 or w.sig.q == 0:
        return UnitarityClass.UNITARY
    st = weight_stats(w)
    gap = w.gap
    n = w.sig.N
    if gap > n - 1:
        return UnitarityClass.DISCRETE_SERIES
    if gap == n - 1:
        return UnitarityClass.LIMIT_OF_DISCRETE_SERIES
    if gap >= n - st.p_prime - st.q_prime:
        return UnitarityClass.UNITARY
    return UnitarityClass.NON_UNITARY


def is_degenerate(w: KWeight) -> bool:
    return w.sig.p == 0 or w.sig.q == 0


def is_unitarizable(w: KWeight) -> bool:
    return unitarity_class(w) is not UnitarityClass.NON_UNITARY


def kweight_from_pq(sig: GroupSignature, P: HalfIntMultiset,
                    Q: HalfIntMultiset) -> KWeight | None:
    """Invert the P/Q construction; None if no dominant weight produces them.

    The p-side entries lambda_i - (N-1)/2 + (p-i) are strictly decreasing in
    i, so the decreasing enumeration of P determines each lambda_i; likewise
    for Q.  Returns None when the sizes are wrong or the recovered weight is
    not dominant.
    """
    p, q, n = sig.p, sig.q, sig.N
    if P.size != p or Q.size != q:
        return None
    lam: list[int] = []
    for i, v in enumerate(P.values_desc(), start=1):
        twice = v.twice + (n - 1) - 2 * (p - i)
        if twice % 2 != 0:
            return None
        lam.append(twice // 2)
    for ell, v in enumerate(Q.values_desc(), start=1):
        twice = v.twice - (n + 1) + 2 * ell
        if twice % 2 != 0:
            return None
        lam.append(twice // 2)
    if any(lam[i] < lam[i + 1] for i in range(p - 1)):
        return None
    if any(lam[i] < lam[i + 1] for i in range(p, n - 1)):
        return None
    return KWeight(sig, tuple(lam))
