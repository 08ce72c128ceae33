"""Projectivities that put an arc into the normal forms the cap
constructions start from.

Every target returns ``(psi, psi(K))``.  For the sum-point targets the
projectivity is checked to be integral for K, so sum-points, beta and p
carry over unchanged.
"""
from __future__ import annotations

import enum

import numpy as np

from ..errors import HypothesisViolated, SearchExhausted
from ..projgeom import Projectivity
from .core import PlaneArc, profile


class Target(enum.Enum):
    SUMPOINT_001 = "001"
    SUMPOINT_011 = "011"
    SINF_NO_ONE = "sinf"
    PARABOLA_FREE = "parabola-free"
    STAR = "star"
    AFFINE_SINF_NO_ONE = "affine-sinf"


def transform(psi: Projectivity, K: PlaneArc, integral: bool = True) -> PlaneArc:
    if integral and not psi.is_integral_for(K.points):
        from ..errors import IntegralityViolated

        raise IntegralityViolated(f"{psi!r} is not integral for {K!r}")
    return PlaneArc([psi.apply_raw(p.coords) for p in K.points], K.F)


def _diag(F, a: int, b: int, c: int) -> Projectivity:
    return Projectivity(((a, 0, 0), (0, b, 0), (0, 0, c)), F)


def _require_beta_one(K: PlaneArc):
    prof = profile(K)
    if not prof.complete:
        raise HypothesisViolated("K complete", f"{len(prof.uncovered)} points uncovered")
    if prof.beta != 1:
        raise HypothesisViolated("beta(K) = 1", f"beta = {prof.beta}")
    return prof


def _line_at_infinity(K: PlaneArc) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    inf = [p.coords for p in K.infinite_points]
    if len(inf) != 2:
        raise HypothesisViolated("l_inf is a secant of K", f"{len(inf)} points of K on X_0 = 0")
    return inf[0], inf[1]


def to_sumpoint_001(K: PlaneArc, check: bool = True) -> tuple[Projectivity, PlaneArc]:
    if check:
        _require_beta_one(K)
    F = K.F
    a, b = _line_at_infinity(K)
    # ranks order (0,1,*) before (0,0,1)
    if a[1] == 1 and b[1] == 1:
        psi = Projectivity.identity(F)
    else:
        g = a[2] if a[1] == 1 else b[2]
        psi = Projectivity(((1, 0, 0), (0, g ^ 1, 1), (0, g, 1)), F)
    return psi, transform(psi, K)


def to_sumpoint_011(K: PlaneArc, check: bool = True) -> tuple[Projectivity, PlaneArc]:
    if check:
        _require_beta_one(K)
    F = K.F
    a, b = _line_at_infinity(K)
    if a[1] == 0 or b[1] == 0:
        g = a[2] if a[1] == 1 else b[2]
        psi = Projectivity(((1, 0, 0), (0, 1, 0), (0, g, 1)), F)
    else:
        f, g = a[2], b[2]
        i = F.inv(f ^ g)
        psi = Projectivity(((1, 0, 0), (0, F.mul(f, i), i), (0, F.mul(g, i), i)), F)
    return psi, transform(psi, K)


def _s_infty_values(K: PlaneArc) -> set[int]:
    pts = [p.coords for p in K.points]
    out = set()
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if x[0] == y[0] and x[1] == y[1]:
                out.add(x[2] ^ y[2])
    return out


def _scale_out_one(K: PlaneArc) -> Projectivity:
    """diag(1, 1, 1/w) with the smallest w != 0 outside S_inf(K)."""
    F = K.F
    bad = _s_infty_values(K)
    for w in range(1, K.q):
        if w not in bad:
            return _diag(F, 1, 1, F.inv(w))
    raise SearchExhausted("every nonzero w lies in S_inf(K)")


def to_sinf_no_one(K: PlaneArc, check: bool = True) -> tuple[Projectivity, PlaneArc]:
    psi1, K1 = to_sumpoint_001(K, check=check)
    psi2 = _scale_out_one(K1)
    psi = psi2 @ psi1
    return psi, transform(psi, K)


def to_affine_sinf_no_one(K: PlaneArc) -> tuple[Projectivity, PlaneArc]:
    """For an affine arc: scale X_2 so that 1 is not in S_inf."""
    if not K.is_affine():
        raise HypothesisViolated("K affine")
    psi = _scale_out_one(K)
    return psi, transform(psi, K)


def _s1_values(K: PlaneArc) -> set[int]:
    F = K.F
    pts = [p.coords for p in K.points]
    out = set()
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if x[0] == y[0] and x[1] != y[1]:
                d1 = x[1] ^ y[1]
                if x[2] ^ y[2] == d1:
                    out.add(d1)
    return out


def meets_parabola_family(K: PlaneArc, S1=None) -> bool:
    """Whether K meets {(1, a, A a^2) : A in S_1(K), a in F_q}."""
    F = K.F
    if S1 is None:
        S1 = _s1_values(K)
    for p in K.affine_points:
        _, b, c = p.coords
        bb = F.mul(b, b)
        if any(c == F.mul(A, bb) for A in S1):
            return True
    return False


def to_parabola_free(K: PlaneArc, check: bool = True) -> tuple[Projectivity, PlaneArc]:
    """Shift X_1 by w X_0 so that K avoids {(1, a, A a^2) : A in S_1(K)}."""
    F, q = K.F, K.q
    if check:
        prof = _require_beta_one(K)
        if not (len(K) - 2) * prof.p < q - 1:
            raise HypothesisViolated("(k-2)p(K) < q-1", f"({len(K)}-2)*{prof.p} >= {q - 1}")
    psi1, K1 = to_sumpoint_011(K, check=False)
    S1 = _s1_values(K1)
    # phi_w(1,b,c) = (1, w+b, c) lands in the family iff c = A (w+b)^2
    for w in range(1, q):
        hit = False
        for p in K1.affine_points:
            _, b, c = p.coords
            wb = w ^ b
            t = F.mul(wb, wb)
            if any(c == F.mul(A, t) for A in S1):
                hit = True
                break
        if not hit:
            phi = Projectivity(((1, 0, 0), (w, 1, 0), (0, 0, 1)), F)
            psi = phi @ psi1
            return psi, transform(psi, K)
    raise SearchExhausted("no w in F_q* moves K off the parabola family")


def _external_line(K: PlaneArc):
    plane = K.plane
    lines = plane.coords_array(np.arange(plane.n_points))
    F = K.F
    prod = F.mul_table[lines[:, None, :], K.reps[None, :, :]]
    dot = prod[..., 0] ^ prod[..., 1] ^ prod[..., 2]
    ext = np.flatnonzero((dot != 0).all(axis=1))
    if ext.size == 0:
        raise SearchExhausted("K has no external line")
    return tuple(int(x) for x in lines[ext[0]])


def _line_to_infinity(K: PlaneArc) -> Projectivity:
    F = K.F
    ell = _external_line(K)
    if ell == (1, 0, 0):
        return Projectivity.identity(F)
    units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for i in range(3):
        for j in range(i + 1, 3):
            try:
                return Projectivity((ell, units[i], units[j]), F)
            except Exception:
                continue
    raise AssertionError("unreachable: a nonzero row always extends to a basis")


def to_star(K: PlaneArc, check: bool = True) -> tuple[Projectivity, PlaneArc]:
    """Affine, 1 not in S_inf, and Y_2 != Y_1^2 on every point.

    The first step (an external line sent to X_0 = 0) is not integral, so
    this target makes no claim about sum-points.
    """
    F, q = K.F, K.q
    if check and not len(K) < q - 5:
        raise HypothesisViolated("k < q - 5", f"k={len(K)}, q={q}")
    psi = _line_to_infinity(K)
    K1 = transform(psi, K, integral=False)
    s = _scale_out_one(K1)
    psi = s @ psi
    K1 = transform(psi, K, integral=False)
    # (1,0,0) admits no scaling of X_1; translate it away first
    if (1, 0, 0) in [p.coords for p in K1.points]:
        taken = {p.coords[1] for p in K1.points if p.coords[2] == 0}
        t = next(t for t in range(1, q) if t not in taken)
        psi = Projectivity(((1, 0, 0), (t, 1, 0), (0, 0, 1)), F) @ psi
        K1 = transform(psi, K, integral=False)
    for w in range(1, q):
        w2 = F.mul(w, w)
        if all(c != F.mul(w2, F.mul(b, b)) for _, b, c in (p.coords for p in K1.points)):
            psi = _diag(F, 1, w, 1) @ psi
            return psi, transform(psi, K, integral=False)
    raise SearchExhausted("no w with Y_2 != (w Y_1)^2 on all of K")


_DISPATCH = {
    Target.SUMPOINT_001: to_sumpoint_001,
    Target.SUMPOINT_011: to_sumpoint_011,
    Target.SINF_NO_ONE: to_sinf_no_one,
    Target.PARABOLA_FREE: to_parabola_free,
    Target.STAR: to_star,
}


def normalize_arc(K: PlaneArc, target: Target | str, check: bool = True) -> tuple[Projectivity, PlaneArc]:
    if isinstance(target, str):
        target = Target[target.upper()] if target.upper() in Target.__members__ else Target(target)
    if target is Target.AFFINE_SINF_NO_ONE:
        return to_affine_sinf_no_one(K)
    return _DISPATCH[target](K, check=check)


# conditions checked on outputs


def satisfies_star(K: PlaneArc) -> bool:
    F = K.F
    return (
        K.is_affine()
        and 1 not in _s_infty_values(K)
        and all(p.coords[2] != F.mul(p.coords[1], p.coords[1]) for p in K.points)
    )


def satisfies_IIIa(K: PlaneArc) -> bool:
    prof = profile(K)
    inf = sorted(p.coords for p in K.infinite_points)
    return (
        prof.complete
        and prof.beta == 1
        and inf == [(0, 0, 1), (0, 1, 0)]
        and (len(K) - 2) * prof.p < K.q - 1
        and not meets_parabola_family(K)
    )
