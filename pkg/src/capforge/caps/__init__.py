"""Cap constructions in PG(N, q), q even, and their verification."""
from .bounds import bounds_report
from .builders import (
    BUILDERS,
    build_even_case1,
    build_even_case2,
    build_even_case3,
    build_odd_case1,
    build_odd_case3,
)
from .core import Cap, Provenance, parabola_cap, product_cap, secants_through_external, verify, verify_cap, verify_complete
from .kcap import k2_star, k_m1m2_cap

__all__ = [
    "BUILDERS",
    "Cap",
    "Provenance",
    "bounds_report",
    "build_even_case1",
    "build_even_case2",
    "build_even_case3",
    "build_odd_case1",
    "build_odd_case3",
    "k2_star",
    "k_m1m2_cap",
    "parabola_cap",
    "product_cap",
    "secants_through_external",
    "verify",
    "verify_cap",
    "verify_complete",
]
