"""Seeded randomized greedy search for small complete arcs.

Each run grows an arc one point at a time.  A candidate is any point on
no secant yet (so adding it keeps the arc property); the run picks the
candidate that covers the most still-uncovered points, breaking ties
uniformly at random.  Runs restart from the seed set and the smallest
complete arc wins.  Everything is driven by one ``numpy`` Generator, so a
given ``rng_seed`` always reproduces the same arc.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..gf2e import FieldCtx
from ..projgeom import ProjectiveSpace
from .core import PlaneArc


class PlaneIncidence:
    """Point-line incidence of PG(2, q) as a ``(n, q+1)`` table.

    Row x lists the ranks y with x . y = 0; read with x a line this is
    the set of points on it, and with x a point the set of lines through
    it (lines are ranked by their normalized dual coordinates).
    """

    def __init__(self, F: FieldCtx):
        self.F = F
        self.plane = ProjectiveSpace(2, F)
        q = F.q
        n = self.plane.n_points
        L = self.plane.coords_array(np.arange(n))
        lead = (L != 0).argmax(axis=1)
        # basis of the orthogonal complement: e_j + l_j e_lead for j != lead
        u = np.zeros((n, 3), dtype=np.int64)
        v = np.zeros((n, 3), dtype=np.int64)
        others = np.array([[1, 2], [0, 2], [0, 1]])[lead]
        rows = np.arange(n)
        j0, j1 = others[:, 0], others[:, 1]
        u[rows, j0] = 1
        u[rows, lead] = L[rows, j0]
        v[rows, j1] = 1
        v[rows, lead] = L[rows, j1]
        lam = np.arange(1, q, dtype=np.int64)
        comb = u[:, None, :] ^ F.mul_table[lam[None, :, None], v[:, None, :]]
        table = np.empty((n, q + 1), dtype=np.int64)
        table[:, 0] = self.plane.rank_array(u)
        table[:, 1] = self.plane.rank_array(v)
        table[:, 2:] = self.plane.rank_array(comb)
        self.table = table
        self.coords = L

    def line_of(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Line ranks through point rank arrays ``a`` and ``b`` (a != b)."""
        P = self.coords[a]
        Q = self.coords[b]
        M = self.F.mul_table
        cross = np.stack(
            [
                M[P[..., 1], Q[..., 2]] ^ M[P[..., 2], Q[..., 1]],
                M[P[..., 2], Q[..., 0]] ^ M[P[..., 0], Q[..., 2]],
                M[P[..., 0], Q[..., 1]] ^ M[P[..., 1], Q[..., 0]],
            ],
            axis=-1,
        )
        return self.plane.rank_array(cross)


@lru_cache(maxsize=8)
def incidence(F: FieldCtx) -> PlaneIncidence:
    return PlaneIncidence(F)


@dataclass
class GreedyResult:
    arc: PlaneArc
    runs: int
    sizes: list[int]


def _one_run(inc: PlaneIncidence, seed_ranks: list[int], rng: np.random.Generator,
             affine: bool, n_random: int, slack: int = 0) -> list[int] | None:
    q = inc.F.q
    n = inc.plane.n_points
    target = np.zeros(n, dtype=bool)
    if affine:
        target[: q * q] = True
    else:
        target[:] = True
    covered = ~target  # points outside the target count as already covered
    addable = np.ones(n, dtype=bool)
    if affine:
        addable[q * q:] = False
    unc_on_line = (~covered)[inc.table].sum(axis=1)
    arc: list[int] = []

    def add(c: int) -> None:
        if arc:
            lines = inc.line_of(np.full(len(arc), c), np.array(arc))
            pts = inc.table[lines].ravel()
        else:
            pts = np.array([c])
        pts = np.union1d(pts, [c])
        newly = pts[~covered[pts]]
        covered[newly] = True
        addable[pts] = False
        if newly.size:
            np.subtract.at(unc_on_line, inc.table[newly].ravel(), 1)
        arc.append(c)

    for c in seed_ranks:
        if not addable[c]:
            return None
        add(c)
    for _ in range(n_random):
        cand = np.flatnonzero(addable)
        if cand.size == 0:
            break
        add(int(rng.choice(cand)))
    while not covered.all():
        cand = np.flatnonzero(addable)
        if cand.size == 0:
            return None  # stuck: uncovered targets but nothing addable
        if arc:
            lines = inc.line_of(np.repeat(cand, len(arc)), np.tile(arc, cand.size))
            score = unc_on_line[lines].reshape(cand.size, len(arc)).sum(axis=1)
            score = score + (~covered[cand])
        else:
            score = (~covered[cand]).astype(np.int64)
        best = np.flatnonzero(score >= score.max() - slack)
        add(int(cand[best[rng.integers(best.size)]]))
    return arc


def greedy_complete(seed_arc: PlaneArc | None, F: FieldCtx | None = None, rng_seed: int = 0,
                    iterations: int = 100, affine: bool = False, n_random: int = 0,
                    target_size: int | None = None, slack: int = 0) -> GreedyResult:
    """Smallest complete arc found over ``iterations`` greedy runs.

    With ``affine`` the runs only use affine points and stop once every
    affine point is covered (an affinely complete arc).  ``n_random``
    points are added uniformly at random after the seed, before the greedy
    phase.  With ``slack`` > 0 a run picks uniformly among candidates whose
    score is within ``slack`` of the best.  The search stops early once
    ``target_size`` is reached.
    """
    if F is None:
        if seed_arc is None:
            raise ValueError("need a field when no seed arc is given")
        F = seed_arc.F
    inc = incidence(F)
    seed = [p.rank for p in seed_arc.points] if seed_arc is not None else []
    rng = np.random.default_rng(rng_seed)
    best: list[int] | None = None
    sizes = []
    runs = 0
    for _ in range(max(1, iterations)):
        runs += 1
        arc = _one_run(inc, seed, rng, affine, n_random, slack)
        if arc is None:
            continue
        sizes.append(len(arc))
        if best is None or len(arc) < len(best):
            best = arc
        if target_size is not None and len(best) <= target_size:
            break
    if best is None:
        raise RuntimeError("every greedy run got stuck")
    plane = inc.plane
    return GreedyResult(PlaneArc([plane.point(r) for r in best], F), runs, sizes)
