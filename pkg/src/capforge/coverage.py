"""Secant coverage over PG(N, q) with numpy.

Everything here works on the rank layout of :mod:`capforge.projgeom`: a
point set is an int64 array of normalized representatives, and the
coverage state is a dense boolean array indexed by rank.  Lines are never
stored; each chunk of pairs is expanded to its ``q - 1`` combinations
``P_i + lambda P_j`` on the fly.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterator

import numpy as np

from .projgeom import ProjectiveSpace

# upper bound on the number of int64 entries materialized per chunk
CHUNK_ELEMS = 1 << 22


class CoverageSet:
    """Dense bitset over the ranks of PG(N, q)."""

    def __init__(self, space: ProjectiveSpace, bits: np.ndarray | None = None):
        self.space = space
        if bits is None:
            bits = np.zeros(space.n_points, dtype=bool)
        elif bits.shape != (space.n_points,):
            raise ValueError("bitset length does not match the space")
        self.bits = bits
        self.marks = 0  # number of mark operations applied, for reporting

    def mark(self, ranks) -> None:
        ranks = np.asarray(ranks, dtype=np.int64).ravel()
        self.bits[ranks] = True
        self.marks += ranks.size

    def __contains__(self, rank: int) -> bool:
        return bool(self.bits[rank])

    def __ior__(self, other: "CoverageSet") -> "CoverageSet":
        self.bits |= other.bits
        self.marks += other.marks
        return self

    @property
    def count(self) -> int:
        return int(self.bits.sum())

    def is_full(self) -> bool:
        return bool(self.bits.all())

    def uncovered(self) -> np.ndarray:
        return np.flatnonzero(~self.bits)

    def covered(self) -> np.ndarray:
        return np.flatnonzero(self.bits)


def pair_chunks(n: int, q: int, width: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Index pairs i < j in chunks sized for ``(chunk, q-1, width)`` arrays."""
    if n < 2:
        return
    size = max(1, CHUNK_ELEMS // max(1, (q - 1) * width))
    ii, jj = np.triu_indices(n, 1)
    for start in range(0, ii.size, size):
        yield ii[start:start + size], jj[start:start + size]


def line_ranks(space: ProjectiveSpace, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Ranks of ``a + lambda b`` for lambda = 1 .. q-1; shape ``(len(a), q-1)``.

    Column ``lambda - 1`` corresponds to ``lambda``; these are the points
    of each line other than ``a`` and ``b``.
    """
    F = space.F
    lam = np.arange(1, space.q, dtype=np.int64)
    v = a[:, None, :] ^ F.mul_table[lam[None, :, None], b[:, None, :]]
    return space.rank_array(v)


def _map_chunks(func, chunks, workers: int):
    if workers <= 1:
        return [func(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(func, chunks))


def secant_coverage(space: ProjectiveSpace, reps: np.ndarray, workers: int = 1) -> CoverageSet:
    """Mark every point on a line joining two points of ``reps``.

    The points of ``reps`` are marked too (when there are at least two).
    The result does not depend on ``workers``: partial bitsets are OR-ed.
    """
    reps = np.asarray(reps, dtype=np.int64)
    cov = CoverageSet(space)
    if len(reps) < 2:
        return cov
    cov.mark(space.rank_array(reps))

    def work(chunk):
        i, j = chunk
        part = np.zeros(space.n_points, dtype=bool)
        part[line_ranks(space, reps[i], reps[j]).ravel()] = True
        return part, i.size * (space.q - 1)

    for part, n_marks in _map_chunks(work, pair_chunks(len(reps), space.q, space.N + 1), workers):
        cov.bits |= part
        cov.marks += n_marks
    return cov


def first_collinear_triple(space: ProjectiveSpace, reps: np.ndarray, pairs=None):
    """Return ``(i, j, k)`` with reps[k] on the line reps[i] reps[j], or None.

    ``pairs`` restricts the scan to the given ``(i, j)`` index arrays;
    by default every pair is scanned.  Duplicate points count as a
    violation and are reported as ``(i, j, j)``.
    """
    reps = np.asarray(reps, dtype=np.int64)
    n = len(reps)
    if n < 3:
        ranks = space.rank_array(reps) if n else np.zeros(0, dtype=np.int64)
        if n == 2 and ranks[0] == ranks[1]:
            return (0, 1, 1)
        return None
    ranks = space.rank_array(reps)
    order = np.argsort(ranks, kind="stable")
    sr = ranks[order]
    dup = np.flatnonzero(sr[1:] == sr[:-1])
    if dup.size:
        return (int(order[dup[0]]), int(order[dup[0] + 1]), int(order[dup[0] + 1]))
    owner = np.full(space.n_points, -1, dtype=np.int64)
    owner[ranks] = np.arange(n)
    chunks = pair_chunks(n, space.q, space.N + 1) if pairs is None else [pairs]
    for i, j in chunks:
        lr = line_ranks(space, reps[i], reps[j])
        hit = owner[lr]
        bad = np.argwhere(hit >= 0)
        if bad.size:
            r, c = bad[0]
            return (int(i[r]), int(j[r]), int(hit[r, c]))
    return None


def is_cap_array(space: ProjectiveSpace, reps: np.ndarray) -> bool:
    return first_collinear_triple(space, reps) is None


def sampled_cap_check(space: ProjectiveSpace, reps: np.ndarray, n_triples: int, rng: np.random.Generator) -> bool:
    """Check random pairs against every other point: about ``n_triples`` triples."""
    reps = np.asarray(reps, dtype=np.int64)
    n = len(reps)
    if n < 3:
        return first_collinear_triple(space, reps) is None
    n_pairs = max(1, -(-n_triples // (n - 2)))
    i = rng.integers(0, n, size=n_pairs)
    j = rng.integers(0, n - 1, size=n_pairs)
    j = np.where(j >= i, j + 1, j)
    return first_collinear_triple(space, reps, pairs=(i, j)) is None


def covered_by_projection(space: ProjectiveSpace, reps: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """For each target rank, whether it lies on a secant of ``reps`` (or in it).

    Projects the set from the target: two points of the set lie on a line
    with the target exactly when their projections coincide.  Independent
    of the pair-marking path, so it also serves as a cross-check.
    """
    reps = np.asarray(reps, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    out = np.zeros(targets.size, dtype=bool)
    if len(reps) < 2:
        return out
    F = space.F
    X = space.coords_array(targets)  # normalized
    lead = (X != 0).argmax(axis=-1)
    step = max(1, CHUNK_ELEMS // (len(reps) * (space.N + 1)))
    for s in range(0, targets.size, step):
        x = X[s:s + step]
        t = lead[s:s + step]
        # kill coordinate t of every set point: P + P_t * X
        pt = reps[:, t].T
        proj = reps[None, :, :] ^ F.mul_table[pt[:, :, None], x[:, None, :]]
        zero = ~(proj != 0).any(axis=-1)
        proj[zero] = 0
        proj[zero, 0] = 1  # placeholder for a set point equal to the target
        r = space.rank_array(proj)
        r.sort(axis=1)
        collide = (r[:, 1:] == r[:, :-1]).any(axis=1)
        out[s:s + step] = collide | zero.any(axis=1)
    return out
