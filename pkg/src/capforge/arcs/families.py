"""Explicit arc families: conic, the 4(sqrt q - 1)-arcs K_w and K_w', and the
complete (q+8)/3-arcs with a single sum-point."""
from __future__ import annotations

from math import isqrt

from ..errors import NoValidW, NotAnArc, PreconditionViolated
from ..gf2e import FieldCtx, field
from .core import PlaneArc, profile


def conic(F: FieldCtx) -> PlaneArc:
    """{(1, a, a^2)} together with (0, 0, 1)."""
    pts = [(1, a, F.mul(a, a)) for a in F.elements] + [(0, 0, 1)]
    return PlaneArc(pts, F)


def affine_parabola(F: FieldCtx) -> PlaneArc:
    return PlaneArc([(1, a, F.mul(a, a)) for a in F.elements], F)


def _sqrt_q(q: int) -> int:
    r = isqrt(q)
    if r * r != q or q < 16:
        raise PreconditionViolated(f"q must be an even square >= 16, got {q}")
    return r


def _kw_points(F: FieldCtx, w: int, r: int, prime: bool) -> list[tuple[int, int, int]]:
    mul, inv, pw = F.mul, F.inv, F.pow
    sub = [a for a in F.subfield(r.bit_length() - 1) if a]
    wr1 = pw(w, r - 1)
    wr = pw(w, r)
    w2 = mul(w, w)
    w2r = pw(w, 2 * r)
    pts = []
    for a in sub:
        pts.append((1, inv(a), a))
        pts.append((1, inv(mul(w, a)), mul(w, a)))
        pts.append((1, mul(wr1, inv(a)), a))
        if prime:
            pts.append((1, inv(mul(w2, a)), mul(w2r, a)))
        else:
            pts.append((1, inv(mul(w, a)), mul(wr, a)))
    return pts


def kw_parameter(q: int, d: int | None = None) -> tuple[int, int]:
    """(d, w) for K_w: w^2 + w + d = 0 with d in GF(sqrt q) and w outside it.

    Without ``d`` the first d (by encoding) giving such a w is used.
    """
    F = field(q)
    r = _sqrt_q(q)
    sub = set(F.subfield(r.bit_length() - 1))
    cands = [d] if d is not None else sorted(sub)
    for dd in cands:
        if dd not in sub:
            raise NoValidW(f"d={dd} is not in GF({r})")
        w = F.solve_artin_schreier(dd)
        if w is not None and w not in sub:
            return dd, w
    raise NoValidW(f"no d in GF({r}) gives a root outside GF({r})" if d is None
                   else f"d={d} gives no root outside GF({r})")


def construct_kw(q: int, d: int | None = None) -> PlaneArc:
    F = field(q)
    r = _sqrt_q(q)
    _, w = kw_parameter(q, d)
    pts = _kw_points(F, w, r, prime=False)
    K = PlaneArc(pts, F)
    if len(K) != 4 * r - 4:
        raise NotAnArc(f"K_w has {len(K)} distinct points, expected {4 * r - 4}")
    return K


def cube_root_of_unity(F: FieldCtx) -> int:
    """gamma^((q-1)/3) for the pinned primitive element gamma."""
    if (F.q - 1) % 3:
        raise PreconditionViolated(f"3 does not divide q - 1 = {F.q - 1}")
    return F.exp((F.q - 1) // 3)


def construct_kw_prime(q: int, check_complete: bool = True) -> PlaneArc:
    """K_w' for q = 4^(2h+1): swap (1, 1/(w a), w^sqrt(q) a) for (1, 1/(w^2 a), w^(2 sqrt q) a)."""
    h2 = q.bit_length() - 1
    if q != 1 << h2 or h2 % 2 or (h2 // 2) % 2 == 0 or h2 < 6:
        raise PreconditionViolated(f"q must be 4^(2h+1) with h >= 1, got {q}")
    F = field(q)
    r = _sqrt_q(q)
    w = cube_root_of_unity(F)
    assert F.mul(w, w) ^ w ^ 1 == 0
    K = PlaneArc(_kw_points(F, w, r, prime=True), F)
    if len(K) != 4 * r - 4:
        raise NotAnArc(f"K_w' has {len(K)} distinct points, expected {4 * r - 4}")
    if check_complete and q in (64, 1024) and not K.is_complete():
        raise NotAnArc(f"K_w' is not complete for q={q}")
    return K


def construct_abatangelo(q: int, unchecked: bool = False) -> PlaneArc:
    """C_3 plus Y_1 = (0,1,1/g), Y_2 = (0,1,1/g^2), X_inf = (1,0,0).

    C_3 = {(1, g^(3r), g^(-3r)) : r = 0 .. (q-4)/3} with g the smallest
    primitive element of trace 1.  With ``unchecked`` the h >= 6 even
    requirement is relaxed to h even and no conclusion is asserted.
    """
    h = q.bit_length() - 1
    if q != 1 << h or h % 2 or (h < 6 and not unchecked) or h < 4:
        raise PreconditionViolated(f"q must be 2^h with h >= 6 even, got {q}")
    F = field(q)
    g = F.find_primitive_with_trace_one()
    gi = F.inv(g)
    pts = [(0, 1, gi), (0, 1, F.mul(gi, gi)), (1, 0, 0)]
    for r in range((q - 4) // 3 + 1):
        x = F.pow(g, 3 * r)
        pts.append((1, x, F.inv(x)))
    K = PlaneArc(pts, F)
    if len(K) * 3 != q + 8:
        raise NotAnArc(f"expected {(q + 8) // 3} points, got {len(K)}")
    if not unchecked:
        prof = profile(K)
        if not prof.complete:
            raise NotAnArc("Abatangelo arc is not complete")
        if prof.beta != 1 or prof.p != 1 or prof.sum_points[0].coords != (0, 0, 1):
            raise NotAnArc(f"unexpected sum-points {prof.sum_points} (p={prof.p})")
    return K
