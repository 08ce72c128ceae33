"""Searches over projective images of an arc: single-sum-point images,
Table-1 style parameter rows, and the one-sum-point conjecture scan."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import SearchExhausted
from ..gf2e import FieldCtx, field as gf
from ..projgeom import Projectivity
from .core import ArcProfile, PlaneArc, profile
from .greedy import greedy_complete
from .normalize import transform

_UNITS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def secant_to_infinity(K: PlaneArc, i: int, j: int) -> Projectivity:
    """A projectivity sending the secant through points i and j to X_0 = 0."""
    from ..projgeom import line_dual

    F = K.F
    ell = line_dual(K.points[i].coords, K.points[j].coords, F)
    lead = next(t for t, c in enumerate(ell) if c)
    inv = F.inv(ell[lead])
    ell = tuple(F.mul(inv, c) for c in ell)
    rest = [u for t, u in enumerate(_UNITS) if t != lead]
    return Projectivity((ell, rest[0], rest[1]), F)


def random_projectivity(F: FieldCtx, rng: np.random.Generator) -> Projectivity:
    while True:
        m = rng.integers(0, F.q, size=(3, 3))
        try:
            return Projectivity(m.tolist(), F)
        except Exception:
            continue


@dataclass
class SumPointImage:
    projectivity: Projectivity
    arc: PlaneArc
    profile: ArcProfile
    tried: int


def single_sumpoint_image(K: PlaneArc, rng_seed: int = 0, random_trials: int = 0,
                          stop_at_p: int = 1) -> SumPointImage:
    """Projective image of K with beta = 1 and the smallest p found.

    Secants are sent to X_0 = 0 one by one in index order; then
    ``random_trials`` uniformly random projectivities are tried.
    """
    rng = np.random.default_rng(rng_seed)
    best: SumPointImage | None = None
    tried = 0

    def consider(psi: Projectivity) -> bool:
        nonlocal best, tried
        tried += 1
        img = transform(psi, K, integral=False)
        prof = profile(img)
        if prof.beta == 1 and (best is None or prof.p < best.profile.p):
            best = SumPointImage(psi, img, prof, tried)
        return best is not None and best.profile.p <= stop_at_p

    k = len(K)
    done = False
    for i in range(k):
        for j in range(i + 1, k):
            if consider(secant_to_infinity(K, i, j)):
                done = True
                break
        if done:
            break
    if not done:
        for _ in range(random_trials):
            if consider(random_projectivity(K.F, rng)):
                break
    if best is None:
        raise SearchExhausted(f"no image of {K!r} with a single sum-point among {tried} tried")
    best.tried = tried
    return best


# smallest known sizes for q <= 64; all four are attained with p = 1
TABLE1_TARGETS = {8: 6, 16: 9, 32: 14, 64: 22}

# greedy settings that reach the targets from rng_seed=1
TABLE1_BUDGET = {
    8: dict(iterations=50, slack=0, n_random=0),
    16: dict(iterations=300, slack=2, n_random=5),
    32: dict(iterations=300, slack=0, n_random=0),
    64: dict(iterations=400, slack=0, n_random=0),
}


@dataclass
class Table1Row:
    q: int
    k: int
    p: int
    beta: int
    lhs: int  # (k - 2) p
    ok: bool  # lhs < q - 1
    arc: PlaneArc
    greedy_runs: int

    def format(self) -> str:
        rel = "<" if self.ok else ">="
        return f"q={self.q} k={self.k} p={self.p} (k-2)p={self.lhs} {rel} q-1={self.q - 1}"


def table1_row(q: int, rng_seed: int = 1, iterations: int | None = None,
               random_trials: int = 2000) -> Table1Row:
    """Greedy complete arc of the target size, then a beta=1 image of it
    with the smallest p found."""
    budget = dict(TABLE1_BUDGET.get(q, dict(iterations=200, slack=0, n_random=0)))
    if iterations is not None:
        budget["iterations"] = iterations
    target = TABLE1_TARGETS.get(q)
    res = greedy_complete(None, gf(q), rng_seed=rng_seed, target_size=target, **budget)
    img = single_sumpoint_image(res.arc, rng_seed=rng_seed, random_trials=random_trials)
    k, p = len(img.arc), img.profile.p
    return Table1Row(q, k, p, img.profile.beta, (k - 2) * p, (k - 2) * p < q - 1, img.arc, res.runs)


@dataclass
class ConjectureReport:
    q: int
    trials: int
    successes: int = 0
    failures: int = 0
    sizes: list[int] = field(default_factory=list)
    projectivities_tried: list[int] = field(default_factory=list)


def conjecture_scan(q: int, trials: int, rng_seed: int = 0, random_trials: int = 500) -> ConjectureReport:
    """For random complete arcs, look for a projective image with one sum-point."""
    if q > 16:
        raise ValueError("conjecture scan is limited to q <= 16")
    F = gf(q)
    rng = np.random.default_rng(rng_seed)
    rep = ConjectureReport(q, trials)
    for _ in range(trials):
        res = greedy_complete(None, F, rng_seed=int(rng.integers(2**31)), iterations=1,
                              slack=int(rng.integers(0, 4)), n_random=int(rng.integers(0, 6)))
        K = res.arc
        rep.sizes.append(len(K))
        if profile(K).beta == 1:
            rep.successes += 1
            rep.projectivities_tried.append(0)
            continue
        try:
            img = single_sumpoint_image(K, rng_seed=int(rng.integers(2**31)), random_trials=random_trials,
                                        stop_at_p=q)
        except SearchExhausted:
            rep.failures += 1
            continue
        rep.successes += 1
        rep.projectivities_tried.append(img.tried)
    return rep
