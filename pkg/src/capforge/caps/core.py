"""Caps in PG(N, q): the container type, product constructions, and
exhaustive or sampled verification."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np

from ..coverage import CoverageSet, covered_by_projection, first_collinear_triple, sampled_cap_check, secant_coverage
from ..errors import DuplicatePoint, TooLarge
from ..gf2e import FieldCtx
from ..projgeom import Point, ProjectiveSpace, as_array

# exhaustive checks need a dense bitset over PG(N, q)
EXHAUSTIVE_LIMIT = 10**7
# default level switches from exhaustive to sampled above this many points
AUTO_EXHAUSTIVE_LIMIT = 10**6
SAMPLES = 10**6


@dataclass(frozen=True)
class Provenance:
    tag: str
    params: tuple[tuple[str, object], ...] = ()

    @classmethod
    def make(cls, tag: str, **params) -> "Provenance":
        return cls(tag, tuple(params.items()))

    def get(self, key: str, default=None):
        return dict(self.params).get(key, default)

    def format(self) -> str:
        if not self.params:
            return self.tag
        return self.tag + ";" + ",".join(f"{k}={v}" for k, v in self.params)

    @classmethod
    def parse(cls, text: str) -> "Provenance":
        tag, _, rest = text.partition(";")
        params = []
        for item in filter(None, rest.split(",")):
            k, _, v = item.partition("=")
            # the arc digest is hex and stays a string
            params.append((k, int(v) if k != "arc" and v.lstrip("-").isdigit() else v))
        return cls(tag, tuple(params))


class Cap:
    """A point set of PG(N, q), kept in construction order.

    Only distinctness is checked on creation; the cap property itself is
    established by :func:`verify_cap`.
    """

    def __init__(self, points: Iterable, N: int, F: FieldCtx, provenance: Provenance | None = None):
        space = ProjectiveSpace(N, F)
        if isinstance(points, np.ndarray):
            reps = space.normalize_array(np.asarray(points, dtype=np.int64).reshape(-1, N + 1))
        else:
            pts = [p.coords if isinstance(p, Point) else p for p in points]
            reps = space.normalize_array(np.asarray(pts, dtype=np.int64).reshape(-1, N + 1))
        ranks = space.rank_normalized_array(reps)
        if np.unique(ranks).size != ranks.size:
            raise DuplicatePoint("repeated point in cap")
        self.space = space
        self.F = F
        self.N = N
        self.reps = reps
        self.ranks = ranks
        self.provenance = provenance or Provenance("IMPORTED")
        self.report: VerificationReport | None = None

    @property
    def q(self) -> int:
        return self.F.q

    def __len__(self) -> int:
        return len(self.reps)

    def __repr__(self) -> str:
        return f"Cap(N={self.N}, q={self.q}, n={len(self)}, {self.provenance.format()})"

    @cached_property
    def points(self) -> tuple[Point, ...]:
        return tuple(Point(int(r), tuple(int(x) for x in row)) for r, row in zip(self.ranks, self.reps))

    def __contains__(self, p) -> bool:
        if not isinstance(p, Point):
            p = self.space.normalize(p)
        return p.rank in self.rank_set

    @cached_property
    def rank_set(self) -> frozenset[int]:
        return frozenset(int(r) for r in self.ranks)

    def union(self, *others: "Cap", provenance: Provenance | None = None) -> "Cap":
        reps = np.concatenate([self.reps] + [o.reps for o in others])
        return Cap(reps, self.N, self.F, provenance or self.provenance)


def geo(q: int, top: int) -> int:
    """q^top + ... + q, empty (0) when top < 1."""
    return sum(q**e for e in range(1, top + 1))


def parabola_cap(j: int, F: FieldCtx) -> np.ndarray:
    """The q^j points (a_1, a_1^2, .., a_j, a_j^2) of AG(2j, q).

    Rows run through (a_1, .., a_j) in lexicographic order.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    q = F.q
    if j == 0:
        return np.zeros((1, 0), dtype=np.int64)
    a = np.array(list(iproduct(range(q), repeat=j)), dtype=np.int64)
    out = np.empty((len(a), 2 * j), dtype=np.int64)
    out[:, 0::2] = a
    out[:, 1::2] = F.square_table[a]
    return out


def product_reps(C: np.ndarray, C2: np.ndarray) -> np.ndarray:
    """All concatenations (P, Q), P a row of C, Q a row of C2."""
    C = np.asarray(C, dtype=np.int64)
    C2 = np.asarray(C2, dtype=np.int64)
    n, m = len(C), len(C2)
    left = np.repeat(C, m, axis=0)
    right = np.tile(C2, (n, 1))
    return np.concatenate([left, right], axis=1)


def product_cap(C: Cap | np.ndarray | Sequence, C2: np.ndarray, F: FieldCtx,
                provenance: Provenance | None = None) -> Cap:
    """(C : C2) in PG(N1 + N2, q) for a projective cap C and affine cap C2.

    Rows of C must be normalized representatives; C2 holds affine points.
    """
    reps = C.reps if isinstance(C, Cap) else np.asarray(C, dtype=np.int64)
    C2 = np.asarray(C2, dtype=np.int64)
    if C2.ndim != 2:
        raise ValueError("affine cap must be a 2-d array")
    N = reps.shape[1] - 1 + C2.shape[1]
    return Cap(product_reps(reps, C2), N, F, provenance or Provenance.make("PRODUCT"))


def prefix_zeros(reps: np.ndarray, k: int) -> np.ndarray:
    reps = np.asarray(reps, dtype=np.int64)
    return np.concatenate([np.zeros((len(reps), k), dtype=np.int64), reps], axis=1)


def secants_through_external(capset: np.ndarray, P: Sequence[int], F: FieldCtx, affine: bool = True) -> int:
    """Number of 2-subsets of ``capset`` collinear with ``P`` (P not in it).

    With ``affine`` the rows and P are points of AG(n, q); otherwise they
    are representatives in PG(n-1, q).
    """
    X = np.asarray(capset, dtype=np.int64)
    P = np.asarray(P, dtype=np.int64)
    if affine:
        X = np.concatenate([np.ones((len(X), 1), dtype=np.int64), X], axis=1)
        P = np.concatenate([[1], P])
    space = ProjectiveSpace(X.shape[1] - 1, F)
    X = space.normalize_array(X)
    P = space.normalize_array(P[None, :])[0]
    if (space.rank_normalized_array(X) == space.rank_normalized_array(P[None, :])[0]).any():
        raise ValueError("P lies in the set")
    # the line PX is determined by X with P's leading coordinate eliminated
    lead = int(np.flatnonzero(P)[0])
    D = X ^ F.mul_table[X[:, lead][:, None], P[None, :]]
    D = D[:, [t for t in range(D.shape[1]) if t != lead]]
    sub = ProjectiveSpace(D.shape[1] - 1, F)
    r = sub.rank_array(D)
    _, counts = np.unique(r, return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


# verification


@dataclass
class VerificationReport:
    level: str
    is_cap: bool
    complete: bool | None
    n_points: int
    n_uncovered: int | None
    uncovered: list[Point] = field(default_factory=list)
    checked: int = 0  # triples (sampled) or pairs (exhaustive) examined
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "is_cap": self.is_cap,
            "complete": self.complete,
            "n_points": self.n_points,
            "n_uncovered": self.n_uncovered,
            "checked": self.checked,
            "seconds": round(self.seconds, 3),
        }


def resolve_level(space: ProjectiveSpace, level: str) -> str:
    if level == "auto":
        return "exhaustive" if space.n_points <= AUTO_EXHAUSTIVE_LIMIT else "sampled"
    if level not in ("none", "sampled", "exhaustive"):
        raise ValueError(f"unknown verification level {level!r}")
    if level == "exhaustive" and space.n_points > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"|PG({space.N},{space.q})| = {space.n_points} exceeds {EXHAUSTIVE_LIMIT}")
    return level


def verify_cap(C: Cap, level: str = "exhaustive", rng_seed: int = 0, n_samples: int = SAMPLES) -> bool:
    """No three points collinear.

    The exhaustive level expands every pair's line and looks for a third
    point of C on it, which covers all triples.
    """
    level = resolve_level(C.space, level)
    if level == "none":
        return True
    if level == "exhaustive":
        return first_collinear_triple(C.space, C.reps) is None
    return sampled_cap_check(C.space, C.reps, n_samples, np.random.default_rng(rng_seed))


def coverage_of(C: Cap, workers: int = 1) -> CoverageSet:
    if C.space.n_points > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"|PG({C.N},{C.q})| = {C.space.n_points} exceeds {EXHAUSTIVE_LIMIT}")
    return secant_coverage(C.space, C.reps, workers=workers)


def verify_complete(C: Cap, workers: int = 1) -> tuple[bool, list[Point]]:
    """Whether the secants of C cover PG(N, q), and the points they miss."""
    cov = coverage_of(C, workers)
    unc = cov.uncovered()
    return unc.size == 0, C.space.points_from_array(C.space.coords_array(unc)) if unc.size else []


def verify(C: Cap, level: str = "auto", workers: int = 1, rng_seed: int = 0,
           n_samples: int = SAMPLES) -> VerificationReport:
    """Cap property and completeness at the requested level.

    ``sampled`` checks ``n_samples`` random triples and tests ``n_samples``
    random points (capped at the size of the space) for coverage.
    """
    t0 = time.perf_counter()
    level = resolve_level(C.space, level)
    n = len(C)
    if level == "none":
        return VerificationReport("none", True, None, n, None)
    if level == "exhaustive":
        is_cap = first_collinear_triple(C.space, C.reps) is None
        cov = coverage_of(C, workers)
        unc = cov.uncovered()
        pts = C.space.points_from_array(C.space.coords_array(unc)) if unc.size else []
        return VerificationReport("exhaustive", is_cap, unc.size == 0, n, int(unc.size), pts,
                                  checked=n * (n - 1) // 2, seconds=time.perf_counter() - t0)
    rng = np.random.default_rng(rng_seed)
    is_cap = sampled_cap_check(C.space, C.reps, n_samples, rng)
    m = min(n_samples, C.space.n_points)
    targets = rng.choice(C.space.n_points, size=m, replace=False) if m < C.space.n_points else np.arange(m)
    hit = covered_by_projection(C.space, C.reps, targets)
    miss = targets[~hit]
    pts = C.space.points_from_array(C.space.coords_array(np.sort(miss))) if miss.size else []
    return VerificationReport("sampled", is_cap, miss.size == 0, n, int(miss.size), pts,
                              checked=n_samples, seconds=time.perf_counter() - t0)


def cap_from_points(points: Sequence[Point], F: FieldCtx, provenance: Provenance | None = None) -> Cap:
    if not points:
        raise ValueError("empty point list")
    return Cap(as_array(points), len(points[0].coords) - 1, F, provenance)
