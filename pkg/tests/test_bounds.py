from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from capforge.caps.bounds import (
    T_Q,
    bounds_report,
    five_sixths,
    half_lead,
    even_t2,
    even_t2S,
    even_t2Splus,
    odd_t2,
    odd_t2Splus,
    classical,
    s_Nq,
)

# new upper bounds on t_2(N, q) for N = 4, 5, 6 and q = 8, 16, 32, 64
KNOWN_BOUNDS = {
    (4, 8): 54, (4, 16): 153, (4, 32): 462, (4, 64): 1430,
    (5, 8): 182, (5, 16): 665, (5, 32): 2510, (5, 64): 9622,
    (6, 8): 438, (6, 16): 2457, (6, 32): 14798, (6, 64): 91542,
}


@pytest.mark.parametrize("N,q", sorted(KNOWN_BOUNDS))
def test_small_q_bound_values(N, q):
    row = bounds_report(N, q)
    key = "even_t2Splus" if N % 2 == 0 else "odd_t2Splus"
    assert row.values[key] == KNOWN_BOUNDS[N, q]


def test_s_Nq():
    assert s_Nq(4, 8) == 3 * 8 + 2
    assert s_Nq(6, 16) == 3 * (16 + 256) + 2
    assert s_Nq(3, 8) == 2


def test_large_q_closed_forms():
    q = 128
    assert even_t2Splus(4, q, T_Q[7]) == 34 * q + 34
    q = 256
    assert bounds_report(5, q).values["odd_t2Splus"] == 2 * q**2 + 55 * q + 55


def test_exact_fractions():
    v = half_lead(4, 32)
    assert isinstance(v, Fraction) and v == Fraction(1, 2) * 32**2 + 3 * 32 + 2
    assert five_sixths(5, 64).denominator in (1, 2, 3, 6)


def test_best_excludes_s_Nq():
    name, val = bounds_report(6, 16, t2=9).best()
    assert name != "s_Nq" and val <= 2457


def test_inputs_gate_formulas():
    row = bounds_report(4, 16)
    assert "even_t2" not in row.values and "even_t2Splus" in row.values
    row = bounds_report(4, 16, t2=9, t2A=9, t2S=9)
    assert row.values["even_t2"] == even_t2(4, 16, 9) == 12 * 16 - 1
    assert row.values["even_t2S"] == even_t2S(4, 16, 9) == 161


def test_rejects_odd_q():
    with pytest.raises(ValueError):
        bounds_report(4, 12)


@given(st.integers(4, 12), st.integers(3, 12), st.integers(5, 60))
def test_odd_bounds_exceed_even_lead(N, h, t):
    q = 2**h
    if N % 2:
        assert odd_t2Splus(N, q, t) > 2 * q ** ((N - 1) // 2)
        assert odd_t2(N, q, t) > 2 * q ** ((N - 1) // 2)
    else:
        assert even_t2Splus(N, q, t) >= t * q ** ((N - 2) // 2)
    assert classical(N, q) > s_Nq(N, q)
