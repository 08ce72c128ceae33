from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from capforge.arcs.core import PlaneArc, choose_m1_m2, is_arc, profile
from capforge.arcs.families import (
    affine_parabola,
    conic,
    construct_abatangelo,
    construct_kw,
    construct_kw_prime,
    kw_parameter,
)
from capforge.arcs.greedy import greedy_complete
from capforge.arcs.normalize import (
    Target,
    meets_parabola_family,
    normalize_arc,
    satisfies_star,
    transform,
)
from capforge.arcs.search import random_projectivity, single_sumpoint_image
from capforge.errors import HypothesisViolated, NoValidW, NotAnArc, PreconditionViolated
from capforge.gf2e import field
from capforge.projgeom import ProjectiveSpace


def sum_points_oracle(K: PlaneArc) -> list[tuple[int, ...]]:
    """Literal definition: Q off K is a sum-point when every secant through
    it writes Q = c1 P1 + c2 P2 (all normalized) with c1 = c2, and at least
    one secant passes through Q."""
    F = K.F
    plane = ProjectiveSpace(2, F)
    pts = [p.coords for p in K.points]
    out = []
    for Q in plane.enumerate_points():
        if Q in K:
            continue
        seen, ok = 0, True
        for P1, P2 in itertools.combinations(pts, 2):
            for c1 in range(1, F.q):
                for c2 in range(1, F.q):
                    v = tuple(F.mul(c1, a) ^ F.mul(c2, b) for a, b in zip(P1, P2))
                    if v == Q.coords:
                        seen += 1
                        ok &= c1 == c2
        if seen and ok:
            out.append(Q.coords)
    return out


# arcs and families


def test_conic_is_arc(F8):
    K = conic(F8)
    assert len(K) == 9 and is_arc(K.points, F8)


def test_three_points_on_a_line_rejected(F8):
    assert not is_arc([(1, 0, 0), (0, 1, 0), (1, 1, 0)], F8)
    with pytest.raises(NotAnArc):
        PlaneArc([(1, 0, 0), (0, 1, 0), (1, 1, 0)], F8)


def test_repeated_point_rejected(F8):
    with pytest.raises(NotAnArc):
        PlaneArc([(1, 0, 0), (3, 0, 0)], F8)


def test_two_point_coverage(F8):
    K = PlaneArc([(1, 0, 0), (0, 0, 1)], F8)
    assert K.coverage.count == 9
    assert not K.is_complete()


def test_conic_with_nucleus_complete(F8):
    # conic plus its nucleus is a hyperoval, hence complete
    K = conic(F8).with_points([(0, 1, 0)])
    assert len(K) == 10 and K.is_complete()


def test_kw_sizes_and_parameter():
    for q in (16, 64, 256):
        K = construct_kw(q)
        r = int(q**0.5)
        assert len(K) == 4 * r - 4
        d, w = kw_parameter(q)
        F = field(q)
        assert F.mul(w, w) ^ w ^ d == 0
        assert w not in F.subfield((r.bit_length() - 1))


def test_kw_bad_q():
    with pytest.raises(PreconditionViolated):
        construct_kw(32)
    with pytest.raises(NoValidW):
        kw_parameter(64, d=3)  # 3 is not in GF(8) under the pinned modulus


def test_kw_prime_q64():
    K = construct_kw_prime(64)
    assert len(K) == 28 and K.is_complete()
    with pytest.raises(PreconditionViolated):
        construct_kw_prime(256)


def test_abatangelo_precondition():
    with pytest.raises(PreconditionViolated):
        construct_abatangelo(16)
    K = construct_abatangelo(16, unchecked=True)
    assert len(K) == 8


# profile


def test_profile_matches_oracle_q8(arc8):
    prof = profile(arc8)
    assert sorted(p.coords for p in prof.sum_points) == sorted(sum_points_oracle(arc8))


@pytest.mark.parametrize("seed", [0, 3, 7])
def test_profile_matches_oracle_random_images(arc8, seed):
    psi = random_projectivity(field(8), np.random.default_rng(seed))
    K = transform(psi, arc8, integral=False)
    prof = profile(K)
    assert sorted(p.coords for p in prof.sum_points) == sorted(sum_points_oracle(K))


def test_profile_of_secant_line_arc(F8):
    # l_inf a secant through (0,1,0),(0,1,f): (0, X1+1, X2+f) = (0,0,1)-type sum-point
    img = single_sumpoint_image(profile_ready := greedy_complete(None, F8, rng_seed=1, iterations=50).arc)
    assert img.profile.beta == 1 and img.profile.p == 1
    assert profile_ready.is_complete()


def test_s_infty_bounds_with_sumpoint_001(arc8):
    K = normalize_arc(single_sumpoint_image(arc8).arc, "001")[1]
    prof = profile(K)
    assert prof.sum_point.coords == (0, 0, 1)
    assert 1 <= len(prof.s_infty) <= prof.p
    k = len(K)
    for m in range(K.q):
        assert len(prof.S(m)) <= k // 2


def test_cov_infty_of_complete_arc_is_everything(arc8):
    assert profile(arc8).cov_infty == frozenset(range(8))


# greedy


def test_greedy_is_deterministic(F8):
    a = greedy_complete(None, F8, rng_seed=5, iterations=10).arc
    b = greedy_complete(None, F8, rng_seed=5, iterations=10).arc
    assert a == b and a.is_complete()


def test_greedy_affine_gives_affinely_complete(F16):
    K = greedy_complete(None, F16, rng_seed=2, iterations=5, affine=True).arc
    assert K.is_affine()
    assert profile(K).affinely_complete


def test_greedy_extends_seed(F8):
    seed = PlaneArc([(1, 0, 0), (0, 1, 0), (0, 0, 1)], F8)
    K = greedy_complete(seed, iterations=3).arc
    assert seed.ranks_set <= K.ranks_set and K.is_complete()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([8, 16]))
def test_beta_at_least_one_for_complete_arcs(seed, q):
    """Every complete arc has a projective image where l_inf is a secant;
    there the sum of the two points at infinity is a sum-point."""
    K = greedy_complete(None, field(q), rng_seed=seed, iterations=1).arc
    assert K.is_complete()
    from capforge.arcs.search import secant_to_infinity

    for i, j in itertools.combinations(range(len(K)), 2):
        K2 = transform(secant_to_infinity(K, i, j), K, integral=False)
        prof = profile(K2)
        assert prof.beta >= 1
        a, b = (p.coords for p in K2.infinite_points)
        assert K2.plane.normalize([x ^ y for x, y in zip(a, b)]) in prof.sum_points


def _integral_projectivities(K, rng, n):
    out = []
    while len(out) < n:
        psi = random_projectivity(K.F, rng)
        if psi.is_integral_for(K.points):
            out.append(psi)
    return out


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_sum_points_transported_by_integral_projectivities(seed):
    F = field(8)
    K = greedy_complete(None, F, rng_seed=seed, iterations=1).arc
    prof = profile(K)
    plane = K.plane
    for psi in _integral_projectivities(K, np.random.default_rng(seed), 2):
        K2 = transform(psi, K)
        prof2 = profile(K2)
        assert prof2.beta == prof.beta
        assert prof2.p == prof.p
        # the image of a sum-point may be unnormalized; compare points
        assert sorted(p.rank for p in prof2.sum_points) == sorted(
            plane.normalize(psi.apply_raw(p.coords)).rank for p in prof.sum_points)


# normalization


@pytest.fixture(scope="module")
def beta1_arcs(arc8, arc16):
    return [single_sumpoint_image(K, random_trials=500).arc for K in (arc8, arc16)]


def test_target_001(beta1_arcs):
    for K in beta1_arcs:
        psi, K2 = normalize_arc(K, Target.SUMPOINT_001)
        assert psi.is_integral_for(K.points)
        assert profile(K2).sum_point.coords == (0, 0, 1)


def test_target_011(beta1_arcs):
    for K in beta1_arcs:
        psi, K2 = normalize_arc(K, "011")
        assert psi.is_integral_for(K.points)
        assert profile(K2).sum_point.coords == (0, 1, 1)


def test_target_sinf(beta1_arcs):
    for K in beta1_arcs:
        psi, K2 = normalize_arc(K, "sinf")
        prof = profile(K2)
        assert psi.is_integral_for(K.points)
        assert prof.sum_point.coords == (0, 0, 1) and 1 not in prof.s_infty


def test_target_parabola_free(beta1_arcs):
    for K in beta1_arcs:
        psi, K2 = normalize_arc(K, "parabola-free")
        prof = profile(K2)
        F = K2.F
        assert psi.is_integral_for(K.points)
        assert prof.sum_point.coords == (0, 1, 1) and prof.p == profile(K).p
        assert sorted(p.coords for p in K2.infinite_points) == [(0, 0, 1), (0, 1, 0)]
        # enumerate {(1, a, A a^2)} with A in S_1 directly
        S1 = prof.S(1)
        fam = {(1, a, F.mul(A, F.mul(a, a))) for A in S1 for a in range(F.q)}
        assert not fam & {p.coords for p in K2.points}
        assert not meets_parabola_family(K2)


def test_target_star(arc16):
    psi, K2 = normalize_arc(arc16, "star")
    F = K2.F
    assert satisfies_star(K2) and K2.is_complete()
    assert all(c[2] != F.mul(c[1], c[1]) for c in (p.coords for p in K2.points))


def test_target_affine_sinf(F16):
    K = greedy_complete(None, F16, rng_seed=2, iterations=5, affine=True).arc
    _, K2 = normalize_arc(K, "affine-sinf")
    assert 1 not in profile(K2).s_infty and K2.is_affine()


def test_target_needs_beta_one(arc16):
    assert profile(arc16).beta != 1
    with pytest.raises(HypothesisViolated, match="beta"):
        normalize_arc(arc16, "001")


def test_identity_when_already_normalized(beta1_arcs):
    K = normalize_arc(beta1_arcs[0], "001")[1]
    psi, K2 = normalize_arc(K, "001")
    assert psi.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1)) and K2 == K


def test_star_needs_small_k(F8):
    with pytest.raises(HypothesisViolated, match="k < q - 5"):
        normalize_arc(affine_parabola(F8), "star")


def test_choose_m1_m2_constraints(prepared):
    for q in (16, 32):
        K = prepared("2e", q)
        F = K.F
        prof = profile(K)
        m1, m2 = choose_m1_m2(K, prof)
        assert {m1, m2}.isdisjoint({0, 1}) and m1 != m2
        assert F.pow(m1 ^ m2, 3) != 1
        assert 1 not in prof.S(m1) | prof.S(m2)


def test_choose_m1_m2_exhaustive_oracle(prepared):
    K = prepared("2e", 16)
    F = K.F
    prof = profile(K)
    valid = [(a, b) for a in range(2, 16) for b in range(a + 1, 16)
             if F.pow(a ^ b, 3) != 1 and 1 not in prof.S(a) | prof.S(b)]
    assert choose_m1_m2(K, prof) == min(valid)
