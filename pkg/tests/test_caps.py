from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from capforge.arcs.core import profile
from capforge.arcs.greedy import greedy_complete
from capforge.arcs.normalize import normalize_arc
from capforge.caps.builders import (
    BUILDERS,
    build_even_case1,
    build_even_case2,
    build_even_case3,
    build_odd_case1,
    build_odd_case3,
    dimension_to_s,
    size_even_case1,
    size_even_case2,
    size_even_case3,
    size_odd_case1,
    size_odd_case3,
)
from capforge.caps.core import (
    Cap,
    Provenance,
    geo,
    parabola_cap,
    product_cap,
    secants_through_external,
    verify,
    verify_cap,
    verify_complete,
)
from capforge.caps.kcap import (
    check_m1m2,
    default_m1m2,
    k2_star,
    k_m1m2_cap,
    k_m1m2_reps,
    k_m1m2_size,
)
from capforge.errors import BadParameters, DuplicatePoint, HypothesisViolated, TooLarge
from capforge.gf2e import field
from capforge.projgeom import ProjectiveSpace, matrix_rank


def brute_secants(X, P, F):
    """Pairs of X collinear with P, by rank of the 3 x n matrix."""
    n = 0
    for a, b in itertools.combinations(X, 2):
        rows = [[1, *a], [1, *b], [1, *P]]
        n += matrix_rank(rows, F) == 2
    return n


def test_geo_empty_sum_convention():
    assert geo(8, 0) == 0 and geo(8, -1) == 0
    assert geo(8, 2) == 72


def test_parabola_cap_shape(F8):
    assert parabola_cap(0, F8).shape == (1, 0)
    P2 = parabola_cap(2, F8)
    assert P2.shape == (64, 4)
    assert not P2[0].any()
    assert all(r[1] == F8.mul(r[0], r[0]) and r[3] == F8.mul(r[2], r[2]) for r in P2)


def test_product_cap_size(arc8, F8):
    C = product_cap(arc8.reps, parabola_cap(1, F8), F8)
    assert len(C) == 6 * 8 and C.N == 4
    assert verify_cap(C)


def test_cap_rejects_duplicates(F8):
    with pytest.raises(DuplicatePoint):
        Cap([(1, 0, 0, 0), (2, 0, 0, 0)], 3, F8)


def test_provenance_roundtrip():
    p = Provenance.make("CASE3_EVEN", s=1, k=6, q=8, arc="0d731e3e7cb6")
    back = Provenance.parse(p.format())
    assert back == p and back.get("arc") == "0d731e3e7cb6" and back.get("k") == 6


# secant counts on parabola products


@pytest.mark.parametrize("q", [8, 16])
def test_parabola_secant_count_brute_force(q):
    F = field(q)
    P = parabola_cap(1, F)
    inside = {tuple(r) for r in P}
    for pt in [(a, b) for a in range(q) for b in range(q) if (a, b) not in inside][:20]:
        assert secants_through_external(P, pt, F) == brute_secants(P, pt, F) == (q - 2) // 2


def test_two_slice_product_covers_affine_space(F8):
    for h1, h2 in [(0, 1), (3, 5)]:
        P = parabola_cap(1, F8)
        C = np.concatenate([np.concatenate([np.full((8, 1), h), P], axis=1) for h in (h1, h2)])
        inside = {tuple(r) for r in C}
        for pt in itertools.product(range(8), repeat=3):
            if pt not in inside:
                assert secants_through_external(C, pt, F8) >= 1


def test_secants_external_rejects_member(F8):
    with pytest.raises(ValueError):
        secants_through_external(parabola_cap(1, F8), (1, 1), F8)


# K^(2s+1)(m1, m2)


def test_check_m1m2(F8):
    for bad in [(1, 2), (2, 2), (0, 3), (2, 3)]:  # 2 ^ 3 = 1, a cube root of unity
        with pytest.raises(BadParameters):
            check_m1m2(F8, *bad)
    with pytest.raises(BadParameters):
        check_m1m2(field(4), 2, 3)
    assert default_m1m2(F8) == (2, 4)


@pytest.mark.parametrize("s,q", [(0, 8), (1, 8), (2, 8), (1, 16)])
def test_k_m1m2_is_cap_of_stated_size(s, q):
    F = field(q)
    m1, m2 = default_m1m2(F)
    C = k_m1m2_cap(s, m1, m2, F)
    assert len(C) == k_m1m2_size(s, q) == 3 * geo(q, s) - 2 * s + 2
    assert verify_cap(C)


def test_k_m1m2_sizes():
    assert k_m1m2_size(1, 8) == 24
    assert k_m1m2_size(2, 8) == 214


def test_k_m1m2_uncovered_is_m_nonzero_except_two(F8):
    m1, m2 = default_m1m2(F8)
    ok, unc = verify_complete(k_m1m2_cap(1, m1, m2, F8))
    got = {p.coords for p in unc}
    want = {(1, m, 0, 0) for m in range(1, 8)} - {(1, m1 ^ 1, 0, 0), (1, m2 ^ 1, 0, 0)}
    assert not ok and got == want


def test_k2_star_uncovered_set(F8):
    m1, m2 = default_m1m2(F8)
    C = k2_star(1, F=F8)
    assert len(C) == 23 and (1, 0, 0, 0) not in C
    _, unc = verify_complete(C)
    want = {(1, m, 0, 0) for m in range(8)} - {(1, m1 ^ 1, 0, 0), (1, m2 ^ 1, 0, 0)}
    assert {p.coords for p in unc} == want


# builders


def test_case3_q8_s1(prepared):
    C = build_even_case3(prepared("3e", 8), 1)
    assert len(C) == 54 and C.report.is_cap and C.report.complete
    assert C.provenance.tag == "CASE3_EVEN"


def test_case3_q8_s2_size(prepared):
    C = build_even_case3(prepared("3e", 8), 2, verify_level="none")
    assert len(C) == size_even_case3(6, 8, 2) == 438


def test_case3_rejects_unprepared(arc16):
    with pytest.raises(HypothesisViolated, match="beta"):
        build_even_case3(arc16, 1)


def test_case2_q16(prepared):
    K = prepared("2e", 16)
    C = build_even_case2(K, 1)
    assert len(C) == 161 == size_even_case2(9, 16, 1)
    assert C.report.complete
    # the a != 0 part of the block through (0,0,1) has q - 1 points
    blk = [r for r in C.reps if tuple(r[:3]) == (0, 0, 1)]
    assert len(blk) == 15


def test_case2_needs_sumpoint_001(prepared):
    K = normalize_arc(prepared("2e", 16), "011")[1]
    with pytest.raises(HypothesisViolated, match="sum-point"):
        build_even_case2(K, 1)


def test_case1_q16(prepared):
    K = prepared("1e", 16)
    C = build_even_case1(K, 1)
    assert len(C) == size_even_case1(9, 16, 1) == 12 * 16 - 1
    assert C.report.complete


def test_case1_rejects_one_in_s_infty(prepared):
    K = prepared("1e", 16)
    F = K.F
    prof = profile(K)
    # rescale X_2 so some difference in S_inf becomes 1
    d = min(prof.s_infty)
    from capforge.arcs.normalize import transform
    from capforge.projgeom import Projectivity

    K2 = transform(Projectivity(((1, 0, 0), (0, 1, 0), (0, 0, F.inv(d))), F), K)
    with pytest.raises(HypothesisViolated, match="S_inf"):
        build_even_case1(K2, 1)


def test_case1_extension_one_point(F16):
    K = greedy_complete(None, F16, rng_seed=0, iterations=20, affine=True).arc
    K = normalize_arc(K, "affine-sinf")[1]
    missing = set(range(16)) - profile(K).cov_infty
    assert len(missing) == 1
    C = build_even_case1(K, 1)
    assert C.provenance.tag == "CASE1_EVEN_EXT"
    assert len(C) == size_even_case1(10, 16, 1, extension=1) == 13 * 16 - 1 + 1
    assert C.report.complete
    m0 = missing.pop()
    assert (0, 1, m0, 0, 0) in C
    # without the extension the cap is not complete
    C0 = build_even_case1(K, 1, extend=False, verify_level="exhaustive")
    assert not C0.report.complete and len(C0) == len(C) - 1


@pytest.mark.slow
def test_case1_extension_two_smallest():
    F = field(32)
    K = greedy_complete(None, F, rng_seed=2, iterations=1, affine=True).arc
    K = normalize_arc(K, "affine-sinf")[1]
    missing = sorted(set(range(32)) - profile(K).cov_infty)
    assert len(missing) >= 3
    C = build_even_case1(K, 1, verify_level="exhaustive")
    assert C.provenance.get("ext") == f"{missing[0]}/{missing[1]}"
    assert len(C) == size_even_case1(len(K), 32, 1, extension=2)
    assert C.report.complete


def test_odd_case3_q8(prepared):
    C = build_odd_case3(prepared("3o", 8), 1)
    assert len(C) == 182 == size_odd_case3(6, 8, 1)
    assert C.report.complete


def test_odd_case1_q16(prepared):
    C = build_odd_case1(prepared("1o", 16), 1, verify_level="exhaustive")
    assert len(C) == size_odd_case1(9, 16, 1) == 703
    assert C.report.complete
    assert sum(1 for r in C.reps if r[0] == 1) == 2 * 16**2


def test_odd_case1_needs_star(prepared):
    K = prepared("3e", 16)
    with pytest.raises(HypothesisViolated):
        build_odd_case1(K, 1)


def test_small_q_hypothesis(prepared):
    with pytest.raises(HypothesisViolated, match="q > 8"):
        build_even_case2(prepared("2e", 8), 1)


def test_size_formulas_examples():
    assert size_even_case1(6, 8, 2) == 597
    assert size_even_case3(9, 16, 1) == 153
    assert size_odd_case3(9, 16, 1) == 665
    assert size_odd_case3(34, 128, 1) == 2 * 128**2 + 34 * 128 + 34


def test_dimension_to_s():
    assert dimension_to_s("3e", 6) == 2
    assert dimension_to_s("3o", 5) == 1
    with pytest.raises(Exception):
        dimension_to_s("3e", 5)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["1e", "2e", "3e", "1o", "3o"]), st.integers(1, 3), st.sampled_from([16, 32, 64]),
       st.integers(6, 12))
def test_size_formulas_are_cardinalities(case, s, q, k):
    """Cardinality of the assembled point set equals the closed form
    (checks the block bookkeeping; hypotheses are not involved)."""
    from capforge.arcs.core import PlaneArc
    from capforge.caps import builders as B
    from capforge.caps.kcap import k_m1m2_reps, without_u

    F = field(q)
    # a stand-in point list of the right shape: the assembly is set-theoretic
    pts = np.array([[1, i, F.mul(i, i) ^ 1] for i in range(k)], dtype=np.int64)
    prodK = B.product_reps(pts, parabola_cap(s, F))
    m1, m2 = default_m1m2(F)
    if case == "3e":
        blocks = [prodK] + [B.product_reps(pts, parabola_cap(j, F)) for j in range(s)]
        assert sum(map(len, blocks)) == size_even_case3(k, q, s)
    elif case == "1e":
        n = len(prodK) + len(without_u(k_m1m2_reps(s, m1, m2, F)))
        assert n == size_even_case1(k, q, s)
    elif case == "2e":
        n = len(prodK) + len(k_m1m2_reps(s - 1, m1, m2, F)) + q**s - 1
        assert n == size_even_case2(k, q, s)
    elif case == "1o":
        n = 2 * q ** (s + 1) + len(prodK) + len(without_u(k_m1m2_reps(s, m1, m2, F)))
        assert n == size_odd_case1(k, q, s)
    else:
        blocks = [prodK] + [B.product_reps(pts, parabola_cap(j, F)) for j in range(s)]
        assert 2 * q ** (s + 1) + sum(map(len, blocks)) == size_odd_case3(k, q, s)


# verification


def test_two_point_cap_incomplete(F8):
    C = Cap([(1, 0, 0), (0, 1, 0)], 2, F8)
    ok, unc = verify_complete(C)
    assert not ok and len(unc) == 73 - 9


def test_collinear_detected(F8):
    C = Cap([(1, 0, 0), (0, 1, 0), (1, 1, 0)], 2, F8)
    assert not verify_cap(C)
    assert not verify(C, level="exhaustive").is_cap


def test_sampled_agrees_on_good_cap(prepared):
    C = build_even_case3(prepared("3e", 8), 1, verify_level="none")
    rep = verify(C, level="sampled", n_samples=20000)
    assert rep.is_cap and rep.complete and rep.level == "sampled"


def test_sampled_detects_incomplete(F8):
    rep = verify(k2_star(1, F=F8), level="sampled", n_samples=20000)
    assert rep.is_cap and rep.complete is False


def test_exhaustive_limit(F16):
    C = Cap([(1, 0, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0)], 6, F16)
    with pytest.raises(TooLarge):
        verify(C, level="exhaustive")


def test_builders_table():
    assert set(BUILDERS) == {"1e", "2e", "3e", "1o", "3o"}
