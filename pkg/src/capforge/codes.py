"""Caps as parity-check matrices of linear codes over GF(q).

A cap of n points in PG(N, q), n > N + 1, gives the [n, n - N - 1] code
whose parity-check columns are the points.  Distance >= 4 means no three
columns are dependent (the cap property); covering radius 2 means every
syndrome is a combination of at most two columns (completeness).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .caps.core import Cap
from .coverage import CHUNK_ELEMS, first_collinear_triple
from .errors import TooLarge, TooSmall
from .gf2e import FieldCtx
from .projgeom import ProjectiveSpace

SYNDROME_LIMIT = 10**7


@dataclass
class LinearCodeSpec:
    q: int
    n: int
    r: int
    parity_columns: np.ndarray  # shape (n, r), one column per row
    F: FieldCtx

    @property
    def k(self) -> int:
        return self.n - self.r

    def __repr__(self) -> str:
        return f"[{self.n}, {self.k}]_{self.q}"

    def columns_text(self) -> str:
        """H column-major: one column per line, entries as integers."""
        return "\n".join(" ".join(str(int(x)) for x in col) for col in self.parity_columns) + "\n"


def cap_to_code(C: Cap) -> LinearCodeSpec:
    if len(C) <= C.N + 1:
        raise TooSmall(f"a code needs more than N+1 = {C.N + 1} columns, got {len(C)}")
    return LinearCodeSpec(C.q, len(C), C.N + 1, C.reps.copy(), C.F)


def min_distance_at_least_4(spec: LinearCodeSpec) -> bool:
    """No three columns linearly dependent (and no two proportional)."""
    space = ProjectiveSpace(spec.r - 1, spec.F)
    cols = space.normalize_array(np.asarray(spec.parity_columns, dtype=np.int64))
    return first_collinear_triple(space, cols) is None


def covering_radius_is_2(spec: LinearCodeSpec) -> bool:
    """Every nonzero syndrome is a*c_i or a*c_i + b*c_j.

    Works on vectors of GF(q)^r directly, marking each combination by its
    integer encoding, so it does not go through projective coverage.
    """
    q, r = spec.q, spec.r
    total = q**r
    if total > SYNDROME_LIMIT:
        raise TooLarge(f"q^r = {total} syndromes exceeds {SYNDROME_LIMIT}")
    F = spec.F
    M = F.mul_table
    cols = np.asarray(spec.parity_columns, dtype=np.int64)
    weights = q ** np.arange(r - 1, -1, -1, dtype=np.int64)
    hit = np.zeros(total, dtype=bool)
    hit[0] = True
    scal = np.arange(1, q, dtype=np.int64)
    single = M[scal[:, None, None], cols[None, :, :]]  # (q-1, n, r)
    hit[(single * weights).sum(-1).ravel()] = True
    n = len(cols)
    # a c_i + b c_j = a (c_i + (b/a) c_j): scale the q-1 combinations by a
    per_pair = (q - 1) * (q - 1) * r
    step = max(1, CHUNK_ELEMS // per_pair)
    ii, jj = np.triu_indices(n, 1)
    for s in range(0, ii.size, step):
        i, j = ii[s:s + step], jj[s:s + step]
        v = cols[i][:, None, :] ^ M[scal[None, :, None], cols[j][:, None, :]]  # (p, q-1, r)
        w = M[scal[:, None, None, None], v[None]]  # (q-1, p, q-1, r)
        hit[(w * weights).sum(-1).ravel()] = True
    return bool(hit.all())


def syndrome_count(spec: LinearCodeSpec) -> int:
    return spec.q**spec.r
