"""The recursive caps K^(2s+1)(m1, m2) of PG(2s+1, q) and their
punctured versions."""
from __future__ import annotations

import numpy as np

from ..errors import BadParameters
from ..gf2e import FieldCtx
from .core import Cap, Provenance, geo, parabola_cap, prefix_zeros


def check_m1m2(F: FieldCtx, m1: int, m2: int) -> None:
    q = F.q
    if q <= 4:
        raise BadParameters(f"needs q > 4, got q={q}")
    for m in (m1, m2):
        if not 0 < m < q:
            raise BadParameters(f"m={m} is not a nonzero element of GF({q})")
        if m == 1:
            raise BadParameters("m1 and m2 must differ from 1")
    if m1 == m2:
        raise BadParameters("m1 and m2 must be distinct")
    if F.pow(m1 ^ m2, 3) == 1:
        raise BadParameters(f"m1 + m2 = {m1 ^ m2} is a cube root of unity")


def default_m1m2(F: FieldCtx) -> tuple[int, int]:
    """Smallest admissible pair, ignoring any arc."""
    for m1 in range(2, F.q):
        for m2 in range(m1 + 1, F.q):
            if F.pow(m1 ^ m2, 3) != 1:
                return m1, m2
    raise BadParameters(f"no admissible (m1, m2) in GF({F.q})")


def k_m1m2_size(s: int, q: int) -> int:
    """|K^(2s+1)| = 3(q^s + .. + q) - 2s + 2."""
    return 3 * geo(q, s) - 2 * s + 2


def k_m1m2_reps(s: int, m1: int, m2: int, F: FieldCtx) -> np.ndarray:
    """Normalized representatives of K^(2s+1), in recursive order."""
    if s < 0:
        raise BadParameters("s must be >= 0")
    K = np.array([[1, 0], [0, 1]], dtype=np.int64)
    for i in range(1, s + 1):
        P = parabola_cap(i, F)[1:]  # drop (0, .., 0): it is the first row
        n = len(P)
        a1 = np.concatenate([np.full((n, 1), 1), np.full((n, 1), m1), P], axis=1)
        a1b = np.concatenate([np.full((n, 1), 1), np.full((n, 1), m2), P], axis=1)
        a2 = np.concatenate([np.zeros((n, 1), dtype=np.int64), np.ones((n, 1), dtype=np.int64), P], axis=1)
        a3 = prefix_zeros(K, 2)
        u = np.zeros((1, 2 * i + 2), dtype=np.int64)
        u[0, 0] = 1
        K = np.concatenate([a1, a1b, a2, a3, u]).astype(np.int64)
    return K


def without_u(reps: np.ndarray) -> np.ndarray:
    """Drop U = (1, 0, .., 0) (the first row for s = 0, the last otherwise)."""
    u = np.zeros(reps.shape[1], dtype=np.int64)
    u[0] = 1
    return reps[~(reps == u).all(axis=1)]


def k_m1m2_cap(s: int, m1: int, m2: int, F: FieldCtx) -> Cap:
    check_m1m2(F, m1, m2)
    reps = k_m1m2_reps(s, m1, m2, F)
    assert len(reps) == k_m1m2_size(s, F.q)
    return Cap(reps, 2 * s + 1, F, Provenance.make("K_M1M2", s=s, m1=m1, m2=m2))


def k2_star(s: int, m1: int | None = None, m2: int | None = None, F: FieldCtx | None = None) -> Cap:
    """K^(2s+1)(m1, m2) without U = (1, 0, .., 0)."""
    if F is None:
        raise ValueError("a field is required")
    if m1 is None or m2 is None:
        m1, m2 = default_m1m2(F)
    check_m1m2(F, m1, m2)
    reps = without_u(k_m1m2_reps(s, m1, m2, F))
    return Cap(reps, 2 * s + 1, F, Provenance.make("K2_STAR", s=s, m1=m1, m2=m2))


def k2_star_uncovered_expected(s: int, F: FieldCtx) -> np.ndarray:
    """The points (1, m, 0, .., 0), m in GF(q), as representatives."""
    out = np.zeros((F.q, 2 * s + 2), dtype=np.int64)
    out[:, 0] = 1
    out[:, 1] = np.arange(F.q)
    return out
