from __future__ import annotations

import pytest

from capforge.arcs.families import conic
from capforge.caps.builders import build_even_case3
from capforge.errors import DimensionMismatch
from capforge.io import (
    FormatError,
    arc_as_cap,
    dumps_arc,
    dumps_cap,
    format_point,
    loads_arc,
    loads_cap,
    parse_point,
    read_any,
)


def test_point_roundtrip():
    line = format_point((1, 3, 5), 8)
    assert line == "2 8 : 1,3,5"
    assert parse_point(line) == (2, 8, (1, 3, 5))
    with pytest.raises(FormatError):
        parse_point("1,3,5")
    with pytest.raises(DimensionMismatch):
        parse_point("3 8 : 1,3,5")


def test_arc_roundtrip(F8):
    K = conic(F8)
    assert loads_arc(dumps_arc(K)) == K


def test_cap_roundtrip_is_deterministic(prepared):
    C = build_even_case3(prepared("3e", 8), 1, verify_level="none")
    text = dumps_cap(C)
    C2 = loads_cap(text)
    assert dumps_cap(C2) == text
    assert C2.provenance == C.provenance and C2.rank_set == C.rank_set


def test_modulus_mismatch(F8):
    text = dumps_arc(conic(F8)).replace("modulus=0xb", "modulus=0xd")
    with pytest.raises(FormatError, match="modulus"):
        loads_arc(text)


def test_count_mismatch(F8):
    text = dumps_arc(conic(F8)).replace("n=9", "n=8")
    with pytest.raises(FormatError):
        loads_arc(text)


def test_comments_and_prefixed_lines(F8):
    text = "# a comment\narc q=8\n2 8 : 1,0,0\n\n0,1,0\n0,0,1\n"
    assert len(loads_arc(text)) == 3


def test_read_any(tmp_path, F8):
    p = tmp_path / "a.txt"
    p.write_text(dumps_arc(conic(F8)))
    K = read_any(p)
    assert len(arc_as_cap(K)) == 9
    p.write_text("hello\n")
    with pytest.raises(FormatError):
        read_any(p)
