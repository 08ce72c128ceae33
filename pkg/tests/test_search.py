from __future__ import annotations

import pytest

from capforge.arcs.core import profile
from capforge.arcs.search import TABLE1_TARGETS, conjecture_scan, single_sumpoint_image, table1_row
from capforge.errors import SearchExhausted


def test_table1_q8():
    row = table1_row(8)
    assert (row.k, row.p, row.beta) == (6, 1, 1)
    assert row.format() == "q=8 k=6 p=1 (k-2)p=4 < q-1=7"
    assert row.arc.is_complete()


def test_table1_row_reproducible():
    a, b = table1_row(16), table1_row(16)
    assert a.arc == b.arc and a.k == TABLE1_TARGETS[16]


def test_single_sumpoint_image_profile(arc8):
    img = single_sumpoint_image(arc8)
    prof = profile(img.arc)
    assert prof.beta == 1 and prof.p == img.profile.p
    assert img.tried >= 1


def test_single_sumpoint_image_can_fail(F8):
    # an incomplete arc: no search budget spent on random images
    from capforge.arcs.core import PlaneArc

    K = PlaneArc([(1, 0, 0), (0, 1, 0), (0, 0, 1)], F8)
    with pytest.raises(SearchExhausted):
        single_sumpoint_image(K)


def test_conjecture_scan_small():
    rep = conjecture_scan(8, 5, rng_seed=3)
    assert rep.successes + rep.failures == 5
    assert rep.failures == 0
    with pytest.raises(ValueError):
        conjecture_scan(32, 1)
