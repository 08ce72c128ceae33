from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from capforge.errors import DivisionByZero, PreconditionViolated
from capforge.gf2e import FieldCtx, field, modulus_table


def _clmul_mod(a: int, b: int, mod: int, h: int) -> int:
    """Schoolbook carry-less product reduced mod ``mod``: the oracle."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> h & 1:
            a ^= mod
    return r


def test_pinned_moduli_small():
    assert field(8).modulus == 0b1011
    assert field(16).modulus == 0b10011
    assert field(4).modulus == 0b111


def test_modulus_table_covers_range():
    tab = modulus_table()
    for h, m in tab["moduli"].items():
        assert m.bit_length() == int(h) + 1


@pytest.mark.parametrize("q", [4, 8, 16, 32, 64])
def test_mul_matches_schoolbook(q):
    F = field(q)
    for a in range(q):
        for b in range(q):
            assert F.mul(a, b) == _clmul_mod(a, b, F.modulus, F.h)


@pytest.mark.parametrize("q", [8, 16, 256])
def test_primitive_generates(q):
    F = field(q)
    assert len({F.exp(i) for i in range(q - 1)}) == q - 1
    assert F.is_primitive(F.primitive)


def test_mul_table_agrees(F16):
    M = F16.mul_table
    for a in range(16):
        for b in range(16):
            assert M[a, b] == F16.mul(a, b)
    assert np.array_equal(F16.square_table, M[np.arange(16), np.arange(16)])


def test_inverse_of_zero_raises(F8):
    with pytest.raises(DivisionByZero):
        F8.inv(0)


def test_bad_degree():
    with pytest.raises(PreconditionViolated):
        FieldCtx(0)


def test_non_primitive_modulus_rejected():
    # x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5
    with pytest.raises(PreconditionViolated):
        FieldCtx(4, 0b11111)


def test_trace_is_additive_and_balanced(F16):
    tr = [F16.trace(a) for a in range(16)]
    assert set(tr) == {0, 1}
    assert sum(tr) == 8
    for a in range(16):
        for b in range(16):
            assert F16.trace(a ^ b) == tr[a] ^ tr[b]


def test_sqrt_and_artin_schreier(F16):
    for a in range(16):
        assert F16.mul(F16.sqrt(a), F16.sqrt(a)) == a
        w = F16.solve_artin_schreier(a)
        if F16.trace(a) == 0:
            assert w is not None and F16.mul(w, w) ^ w == a
        else:
            assert w is None


def test_subfield(F16):
    sub = F16.subfield(2)
    assert sorted(sub) == sorted({a for a in range(16) if F16.pow(a, 4) == a})
    assert len(sub) == 4


elems = st.integers(0, 255)


@settings(max_examples=200, deadline=None)
@given(elems, elems, elems)
def test_field_axioms_256(a, b, c):
    F = field(256)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 1023), st.integers(-50, 50))
def test_pow_matches_repeated_mul(a, n):
    F = field(1024)
    ref = 1
    base = a if n >= 0 else F.inv(a)
    for _ in range(abs(n)):
        ref = F.mul(ref, base)
    assert F.pow(a, n) == ref
