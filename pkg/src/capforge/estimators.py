"""scikit-learn style wrappers (requires the ``estimators`` extra).

The "data" here is a plane arc rather than a feature matrix, so only the
parameter handling (``get_params``/``set_params``/``clone``) and the
``fit`` -> fitted-attribute-with-trailing-underscore convention carry over.
"""
from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .arcs.core import PlaneArc
from .arcs.greedy import greedy_complete
from .arcs.normalize import normalize_arc
from .caps.builders import BUILDERS, dimension_to_s
from .caps.core import Cap, verify
from .gf2e import field


def _require(est, attr: str):
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet")
    return getattr(est, attr)


class GreedyArcSearch(BaseEstimator):
    """Seeded randomized greedy search for a small complete arc of PG(2, q)."""

    def __init__(self, q: int = 8, iterations: int = 100, affine: bool = False, n_random: int = 0,
                 slack: int = 0, target_size: int | None = None, random_state: int = 0):
        self.q = q
        self.iterations = iterations
        self.affine = affine
        self.n_random = n_random
        self.slack = slack
        self.target_size = target_size
        self.random_state = random_state

    def fit(self, X: PlaneArc | None = None, y=None) -> "GreedyArcSearch":
        """``X`` is an optional seed arc to extend."""
        res = greedy_complete(X, field(self.q), rng_seed=self.random_state, iterations=self.iterations,
                              affine=self.affine, n_random=self.n_random, target_size=self.target_size,
                              slack=self.slack)
        self.arc_ = res.arc
        self.size_ = len(res.arc)
        self.n_runs_ = res.runs
        return self


class ArcNormalizer(TransformerMixin, BaseEstimator):
    """Find an integral projectivity taking an arc to ``target`` form."""

    def __init__(self, target: str = "001", check: bool = True):
        self.target = target
        self.check = check

    def fit(self, X: PlaneArc, y=None) -> "ArcNormalizer":
        self.projectivity_, self.arc_ = normalize_arc(X, self.target, check=self.check)
        return self

    def transform(self, X: PlaneArc) -> PlaneArc:
        psi = _require(self, "projectivity_")
        return PlaneArc([psi.apply_raw(p.coords) for p in X.points], X.F)


class CapConstructor(BaseEstimator):
    """Build the cap of case ``case`` in PG(dim, q) from a prepared arc."""

    def __init__(self, case: str = "3e", dim: int = 4, check: bool = True, verify_level: str = "auto",
                 workers: int = 1):
        self.case = case
        self.dim = dim
        self.check = check
        self.verify_level = verify_level
        self.workers = workers

    def fit(self, X: PlaneArc, y=None) -> "CapConstructor":
        s = dimension_to_s(self.case, self.dim)
        C = BUILDERS[self.case](X, s, check=self.check, verify_level="none", workers=self.workers)
        self.cap_ = C
        self.report_ = None if self.verify_level == "none" else verify(C, self.verify_level, workers=self.workers)
        return self

    def predict(self, X: PlaneArc | None = None) -> Cap:
        return _require(self, "cap_")
