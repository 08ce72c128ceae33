"""Plane arcs, their secant coverage, and the sum-point profile."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..coverage import CoverageSet, first_collinear_triple, pair_chunks, secant_coverage as _secant_coverage
from ..errors import NotAnArc
from ..gf2e import FieldCtx
from ..projgeom import Point, ProjectiveSpace, as_array


class PlaneArc:
    """An arc of PG(2, q): distinct points, no three collinear.

    Points are stored sorted by rank, which makes equality and hashing
    canonical.  Validation happens once, at construction.
    """

    def __init__(self, points: Iterable, F: FieldCtx, validate: bool = True):
        plane = ProjectiveSpace(2, F)
        pts = []
        for p in points:
            if not isinstance(p, Point):
                p = plane.normalize(p)
            elif len(p.coords) != 3:
                raise NotAnArc(f"{p!r} is not a point of PG(2,{F.q})")
            pts.append(p)
        pts.sort()
        if any(a.rank == b.rank for a, b in zip(pts, pts[1:])):
            raise NotAnArc("repeated point")
        self.F = F
        self.plane = plane
        self.points: tuple[Point, ...] = tuple(pts)
        if validate:
            bad = first_collinear_triple(plane, self.reps)
            if bad is not None:
                i, j, k = bad
                raise NotAnArc(f"collinear points {pts[i]!r}, {pts[j]!r}, {pts[k]!r}")

    @property
    def q(self) -> int:
        return self.F.q

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        if not isinstance(p, Point):
            p = self.plane.normalize(p)
        return p.rank in self.ranks_set

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneArc) and self.F == other.F and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.F, self.points))

    def __repr__(self) -> str:
        return f"PlaneArc(q={self.q}, k={len(self)})"

    @cached_property
    def reps(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, 3), dtype=np.int64)
        return as_array(self.points)

    @cached_property
    def ranks_set(self) -> frozenset[int]:
        return frozenset(p.rank for p in self.points)

    @cached_property
    def coverage(self) -> CoverageSet:
        return _secant_coverage(self.plane, self.reps)

    def digest(self) -> str:
        """Short content hash, used to tag cap provenance."""
        h = hashlib.sha256(f"{self.q}:{self.F.modulus}:".encode())
        h.update(",".join(str(p.rank) for p in self.points).encode())
        return h.hexdigest()[:12]

    @property
    def affine_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.points if p.coords[0] == 1)

    @property
    def infinite_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.points if p.coords[0] == 0)

    def is_affine(self) -> bool:
        return all(p.coords[0] == 1 for p in self.points)

    def is_complete(self) -> bool:
        return len(self) >= 2 and self.coverage.is_full()

    def with_points(self, extra: Iterable) -> "PlaneArc":
        return PlaneArc(list(self.points) + list(extra), self.F)


def is_arc(points: Sequence, F: FieldCtx) -> bool:
    try:
        PlaneArc(points, F)
    except NotAnArc:
        return False
    return True


def secant_coverage(K: PlaneArc) -> CoverageSet:
    if len(K) < 2:
        raise NotAnArc("secant coverage needs at least two points")
    return K.coverage


def affine_ranks(q: int) -> slice:
    """Ranks of the affine points (X_0 = 1) form the first block."""
    return slice(0, q * q)


def infinity_rank(q: int, m: int | None) -> int:
    """Rank of (0, 1, m), or of (0, 0, 1) when ``m`` is None."""
    return q * q + q if m is None else q * q + m


@dataclass
class ArcProfile:
    sum_points: list[Point]
    beta: int
    p: int | None
    cov_infty: frozenset[int]
    s_infty: frozenset[int]
    s_m: dict[int, frozenset[int]]
    affinely_complete: bool
    complete: bool
    uncovered: list[Point] = field(default_factory=list)
    secants_through_sum_point: int | None = None

    def S(self, m: int) -> frozenset[int]:
        return self.s_m.get(m, frozenset())

    @property
    def sum_point(self) -> Point | None:
        return self.sum_points[0] if self.beta == 1 else None


def profile(K: PlaneArc) -> ArcProfile:
    """Sum-points, beta, p, Cov_inf, S_inf, S_m, and completeness flags of ``K``.

    Writing a point Q on the secant P_i P_j as the normalization of
    P_i + lambda P_j, its coefficients in normalized form are equal
    exactly when lambda = 1.  So Q is a sum-point when it is covered, not
    in K, and only ever reached with lambda = 1.  Points on no secant are
    not sum-points; they are listed in ``uncovered``.
    """
    if len(K) < 2:
        raise NotAnArc("profile needs at least two points")
    plane, F, q = K.plane, K.F, K.q
    reps = K.reps
    n = plane.n_points
    in_arc = np.zeros(n, dtype=bool)
    in_arc[[p.rank for p in K.points]] = True
    as_sum = np.zeros(n, dtype=bool)
    not_sum = np.zeros(n, dtype=bool)
    sum_rank_of_pair = []
    for i, j in pair_chunks(len(reps), q, 3):
        lam = np.arange(1, q, dtype=np.int64)
        v = reps[i][:, None, :] ^ F.mul_table[lam[None, :, None], reps[j][:, None, :]]
        r = plane.rank_array(v)
        as_sum[r[:, 0]] = True
        not_sum[r[:, 1:].ravel()] = True
        sum_rank_of_pair.append(r[:, 0])
    sum_rank_of_pair = np.concatenate(sum_rank_of_pair)
    covered = as_sum | not_sum | in_arc
    sums = np.flatnonzero(as_sum & ~not_sum & ~in_arc)
    beta = int(sums.size)
    p_val = int((sum_rank_of_pair == sums[0]).sum()) if beta == 1 else None

    cov_infty = frozenset(int(m) for m in range(q) if covered[infinity_rank(q, m)])

    s_infty: set[int] = set()
    s_m: dict[int, set[int]] = {}
    pts = [p.coords for p in K.points]
    for a in range(len(pts)):
        x = pts[a]
        for b in range(a + 1, len(pts)):
            y = pts[b]
            if x[0] != y[0]:
                continue
            if x[1] == y[1]:
                s_infty.add(x[2] ^ y[2])
            else:
                d1 = x[1] ^ y[1]
                m = F.div(x[2] ^ y[2], d1)
                s_m.setdefault(m, set()).add(d1)

    aff = [p for p in K.points if p.coords[0] == 1]
    if len(aff) >= 2:
        aff_cov = _secant_coverage(plane, as_array(aff))
        affinely_complete = bool(aff_cov.bits[affine_ranks(q)].all())
    else:
        affinely_complete = False

    uncovered = [plane.point(int(r)) for r in np.flatnonzero(~covered)]
    return ArcProfile(
        sum_points=[plane.point(int(r)) for r in sums],
        beta=beta,
        p=p_val,
        cov_infty=cov_infty,
        s_infty=frozenset(s_infty),
        s_m={m: frozenset(v) for m, v in sorted(s_m.items())},
        affinely_complete=affinely_complete,
        complete=not uncovered,
        uncovered=uncovered,
        secants_through_sum_point=p_val,
    )


def choose_m1_m2(K: PlaneArc, prof: ArcProfile | None = None, strict: bool = True) -> tuple[int, int]:
    """Smallest pair (m1, m2) with m_i not in {0, 1}, m1 != m2, (m1+m2)^3 != 1
    and 1 not in S_m1(K) or S_m2(K).

    With ``strict`` the usual hypotheses (k < q - 5 and (0,0,1) covered)
    are checked first.
    """
    from ..errors import HypothesisViolated, NotFound

    F, q = K.F, K.q
    if prof is None:
        prof = profile(K)
    if strict:
        if not len(K) < q - 5:
            raise HypothesisViolated("k < q - 5", f"k={len(K)}, q={q}")
        if infinity_rank(q, None) not in K.coverage:
            raise HypothesisViolated("(0,0,1) covered by the secants of K")
    good = [m for m in range(2, q) if 1 not in prof.S(m)]
    for m1 in good:
        for m2 in good:
            if m2 <= m1:
                continue
            if F.pow(m1 ^ m2, 3) != 1:
                return m1, m2
    raise NotFound(f"no admissible (m1, m2) for {K!r}")
