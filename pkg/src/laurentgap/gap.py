"""Effective gap theorem: gap constant M = 3R, splitting, and proof replay.

Given a quasi-inverse f# of f with h = f# * f, the radius R is the least
integer with sum_{||n|| >= R} |f#_n| < 1 / (2 H ||f||_1). Polynomials whose
support breaks into clusters at mutual distance >= M = 3R then split into
pieces that are each divisible by f, provided f is irreducible and atoral.
``proof_trace`` recomputes every inequality of that argument numerically and
the keystone identity u * f = p * h exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .division import check_divisibility, divides
from .lattice import (AmbiguousRounding, IntLaurentPoly, RealSummableArray, SupportSet, dist, mul,
                      round_to_int)
from .quasi_inverse import QuasiInverse


class GapError(ValueError):
    pass


class TailTooFat(GapError):
    pass


class HTooSmall(GapError):
    pass


class NotDivisible(GapError):
    pass


class QuasiInverseRejected(GapError):
    pass


def _accept(q: QuasiInverse) -> None:
    if not q.residual < 0.5:
        raise QuasiInverseRejected(f"residual {q.residual:.3g} is not below 1/2")


def gap_threshold(q: QuasiInverse, H: int) -> float:
    return 1.0 / (2 * H * q.f.norm_1())


def gap_radius(q: QuasiInverse, H: int) -> int:
    """Least R with tail_mass(q, R) < 1/(2 H ||f||_1)."""
    if H < 1:
        raise GapError("H must be >= 1")
    _accept(q)
    thr = gap_threshold(q, H)
    if q.fsharp.tail_bound >= thr:
        raise TailTooFat(f"tail bound {q.fsharp.tail_bound:.3g} never drops below {thr:.3g}")
    for radius in range(len(q.tail_table) + 1):
        if q.tail_mass(radius) < thr:
            return radius
    raise TailTooFat("tail table exhausted")  # unreachable: the last entry is the tail bound


def gap_constant(q: QuasiInverse, H: int) -> int:
    return 3 * gap_radius(q, H)


def cluster_support(r: IntLaurentPoly, M: int) -> List[SupportSet]:
    """Components of supp(r) when points at sup-distance < M are joined."""
    if M < 1:
        raise GapError("M must be >= 1")
    if r.is_zero():
        raise GapError("zero polynomial has no support to cluster")
    pts = sorted(r.terms)
    arr = np.array(pts, dtype=np.int64)
    parent = list(range(len(pts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(pts)):
        close = np.nonzero(np.abs(arr[i + 1:] - arr[i]).max(axis=1) < M)[0] + i + 1
        for j in close:
            a, b = find(i), find(int(j))
            if a != b:
                parent[b] = a
    groups = {}
    for i, p in enumerate(pts):
        groups.setdefault(find(i), []).append(p)
    clusters = [SupportSet(r.dim, frozenset(g)) for g in groups.values()]
    clusters.sort(key=lambda s: min(s.points))
    return clusters


def _dilate_mask(shape, offset, points, radius) -> np.ndarray:
    """Boolean mask of B_radius(points) inside a box."""
    mask = np.zeros(shape, dtype=bool)
    for n in points:
        sl = []
        for k, o, s in zip(n, offset, shape):
            lo = max(k - radius - o, 0)
            hi = min(k + radius - o + 1, s)
            if lo >= hi:
                break
            sl.append(slice(lo, hi))
        else:
            mask[tuple(sl)] = True
    return mask


@dataclass
class ProofTrace:
    R: int
    M: int
    H: int
    tail_condition: float        # tail_mass(R) * 2 H ||f||_1, must be < 1
    off_support_max: float       # max |(r f#)_n| off B_R(U), incl. tail, must be < 1/2
    integrality_gap: float       # max distance of r f# to Z on B_R(U)
    u_deviation: float           # ||u - p f#||_inf incl. tail, must be < 1/(2 ||f||_1)
    u_threshold: float
    identity_exact: bool         # u * f == p * h over Z
    u: IntLaurentPoly = field(repr=False)

    @property
    def margins(self) -> dict:
        return {
            "tail": 1.0 - self.tail_condition,
            "off_support": 0.5 - self.off_support_max,
            "u_deviation": self.u_threshold - self.u_deviation,
        }

    @property
    def passed(self) -> bool:
        m = self.margins
        return m["tail"] > 0 and m["off_support"] > 0 and m["u_deviation"] > 0 and self.identity_exact

    def to_json_obj(self) -> dict:
        return {
            "R": self.R, "M": self.M, "H": self.H,
            "tail_condition": f"{self.tail_condition:.17g}",
            "off_support_max": f"{self.off_support_max:.17g}",
            "integrality_gap": f"{self.integrality_gap:.17g}",
            "u_deviation": f"{self.u_deviation:.17g}",
            "u_threshold": f"{self.u_threshold:.17g}",
            "identity_exact": self.identity_exact,
            "margins": {k: f"{v:.17g}" for k, v in self.margins.items()},
            "passed": self.passed,
            "u": self.u.to_json_obj(),
        }


def proof_trace(f: IntLaurentPoly, q: QuasiInverse, p: IntLaurentPoly, qpoly: IntLaurentPoly,
                H: int, check_preconditions: bool = True) -> ProofTrace:
    """Replay the gap argument for r = p + qpoly with supports at distance >= M."""
    _accept(q)
    R = gap_radius(q, H)
    M = 3 * R
    r = p + qpoly
    if check_preconditions:
        if max(p.norm_inf(), qpoly.norm_inf()) > H:
            raise HTooSmall(f"coefficients exceed H={H}")
        if not p.is_zero() and not qpoly.is_zero() and dist(p.support(), qpoly.support()) < M:
            raise GapError(f"supports are closer than M={M}")
        if check_divisibility(f, r).status != "integer":
            raise NotDivisible("f does not divide p + q")
    thr_u = 1.0 / (2 * f.norm_1())
    tail_cond = q.tail_mass(R) * 2 * H * f.norm_1()
    if p.is_zero() and qpoly.is_zero():
        zero = IntLaurentPoly.zero(f.dim)
        return ProofTrace(R, M, H, tail_cond, 0.0, 0.0, 0.0, thr_u, True, zero)

    w = mul(r, q.fsharp)
    in_u = _dilate_mask(w.data.shape, w.offset, r.terms, R)
    off = float(np.abs(w.data[~in_u]).max(initial=0.0)) + w.tail_bound
    on_vals = w.data[in_u]
    integrality = float(np.abs(on_vals - np.rint(on_vals)).max(initial=0.0))

    if p.is_zero():
        u = IntLaurentPoly.zero(f.dim)
        dev = 0.0
    else:
        in_s = _dilate_mask(w.data.shape, w.offset, p.terms, R)
        try:
            u = round_to_int(w.restrict_mask(in_s))
        except AmbiguousRounding:
            u = round_to_int(RealSummableArray(np.rint(w.data) * in_s, w.offset))
        pf = mul(p, q.fsharp)
        diff = pf - u
        dev = float(np.abs(diff.data).max(initial=0.0)) + pf.tail_bound
    exact = (u * f) == (p * q.h)
    return ProofTrace(R, M, H, tail_cond, off, integrality, dev, thr_u, exact, u)


@dataclass
class GapCertificate:
    f: IntLaurentPoly
    H: int
    R: int
    M: int
    r: IntLaurentPoly
    clusters: List[SupportSet]
    pieces: List[IntLaurentPoly]
    quotients: List[Optional[IntLaurentPoly]]
    traces: List[ProofTrace]
    experimental: bool = False
    irreducible_asserted: bool = True

    @property
    def anomalies(self) -> List[int]:
        """Indices of clusters whose piece is not divisible by f (in a multi-cluster split)."""
        if len(self.clusters) < 2:
            return []
        return [i for i, qt in enumerate(self.quotients) if qt is None]

    @property
    def all_divisible(self) -> bool:
        return all(qt is not None for qt in self.quotients)

    @property
    def traces_passed(self) -> bool:
        return all(t.passed for t in self.traces)

    def audit(self) -> bool:
        """Pieces sum to r exactly and clusters are pairwise >= M apart."""
        total = IntLaurentPoly.zero(self.f.dim)
        for p in self.pieces:
            total = total + p
        if total != self.r:
            return False
        for a, b in itertools.combinations(self.clusters, 2):
            if dist(a, b) < self.M:
                return False
        return True

    def to_json_obj(self) -> dict:
        return {
            "f": self.f.to_json_obj(),
            "H": self.H, "R": self.R, "M": self.M,
            "r": self.r.to_json_obj(),
            "clusters": [sorted(list(p) for p in c.points) for c in self.clusters],
            "pieces": [p.to_json_obj() for p in self.pieces],
            "quotients": [None if qt is None else qt.to_json_obj() for qt in self.quotients],
            "traces": [t.to_json_obj() for t in self.traces],
            "anomalies": self.anomalies,
            "all_divisible": self.all_divisible,
            "traces_passed": self.traces_passed,
            "audit": self.audit(),
            "experimental_quasi_inverse": self.experimental,
            "irreducible_asserted": self.irreducible_asserted,
        }


def split_and_verify(f: IntLaurentPoly, q: QuasiInverse, r: IntLaurentPoly, H: int | None = None,
                     M: int | None = None, irreducible: bool = True, trace: bool = True) -> GapCertificate:
    """Split r into clusters at the gap constant and test each piece for divisibility.

    ``M`` may be raised above the computed gap constant but never lowered.
    Non-divisible pieces are recorded as anomalies, not raised.
    """
    if r.is_zero():
        raise GapError("r must be nonzero")
    if H is None:
        H = r.norm_inf()
    if r.norm_inf() > H:
        raise HTooSmall(f"||r||_inf = {r.norm_inf()} exceeds H = {H}")
    _accept(q)
    if divides(f, r) is None:
        raise NotDivisible("f does not divide r")
    R = gap_radius(q, H)
    M0 = 3 * R
    if M is None:
        M = M0
    elif M < M0:
        raise GapError(f"M={M} is below the gap constant {M0}")
    clusters = cluster_support(r, M)
    pieces = [r.restrict(c) for c in clusters]
    quotients = [divides(f, p) for p in pieces]
    traces = []
    if trace:
        for p in pieces:
            traces.append(proof_trace(f, q, p, r - p, H, check_preconditions=False))
    return GapCertificate(f, H, R, M, r, clusters, pieces, quotients, traces,
                          experimental=q.experimental, irreducible_asserted=irreducible)
