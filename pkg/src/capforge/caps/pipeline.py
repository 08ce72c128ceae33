"""From a field size to an arc meeting a construction's hypotheses."""
from __future__ import annotations

from ..arcs.core import PlaneArc
from ..arcs.greedy import greedy_complete
from ..arcs.normalize import to_parabola_free, to_sinf_no_one, to_star
from ..arcs.search import TABLE1_BUDGET, TABLE1_TARGETS, single_sumpoint_image
from ..gf2e import field


def small_complete_arc(q: int, rng_seed: int = 1, iterations: int | None = None) -> PlaneArc:
    budget = dict(TABLE1_BUDGET.get(q, dict(iterations=100, slack=0, n_random=0)))
    if iterations is not None:
        budget["iterations"] = iterations
    return greedy_complete(None, field(q), rng_seed=rng_seed, target_size=TABLE1_TARGETS.get(q), **budget).arc


def arc_for_case(case: str, q: int, rng_seed: int = 1, K: PlaneArc | None = None,
                 random_trials: int = 2000) -> PlaneArc:
    """Normalize ``K`` (by default a small greedy complete arc) for ``case``."""
    if K is None:
        K = small_complete_arc(q, rng_seed)
    if case in ("1e", "1o"):
        return to_star(K)[1]
    img = single_sumpoint_image(K, rng_seed=rng_seed, random_trials=random_trials)
    if case == "2e":
        return to_sinf_no_one(img.arc)[1]
    if case in ("3e", "3o"):
        return to_parabola_free(img.arc)[1]
    raise ValueError(f"unknown case {case!r}")
