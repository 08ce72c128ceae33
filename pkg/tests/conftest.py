from __future__ import annotations

import pytest

from capforge.caps.pipeline import arc_for_case, small_complete_arc
from capforge.gf2e import field


@pytest.fixture(scope="session")
def F8():
    return field(8)


@pytest.fixture(scope="session")
def F16():
    return field(16)


@pytest.fixture(scope="session")
def arc8():
    """Seeded greedy complete 6-arc of PG(2, 8)."""
    return small_complete_arc(8)


@pytest.fixture(scope="session")
def arc16():
    return small_complete_arc(16)


@pytest.fixture(scope="session")
def prepared():
    """Arcs normalized for each construction, keyed by (case, q)."""
    cache = {}

    def get(case, q):
        if (case, q) not in cache:
            cache[case, q] = arc_for_case(case, q)
        return cache[case, q]

    return get
