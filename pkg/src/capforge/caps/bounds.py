"""Closed-form upper bounds on t_2(N, q), the size of the smallest complete
cap of PG(N, q), q even.

All values are exact: formulas with fractional coefficients are evaluated
with :class:`fractions.Fraction` and reported as such.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .core import geo

# smallest known sizes of complete arcs with one sum-point and (k-2)p < q-1,
# indexed by log2 q
T_Q = {3: 6, 4: 9, 5: 14, 6: 22, 7: 34, 8: 55, 9: 86, 10: 124, 11: 201, 12: 307, 13: 461, 14: 665, 15: 1026}


def s_Nq(N: int, q: int) -> int:
    """3(q^floor((N-2)/2) + .. + q) + 2."""
    return 3 * geo(q, (N - 2) // 2) + 2


def classical(N: int, q: int) -> int:
    return (q ** (N // 2) if N % 2 == 0 else 3 * q ** ((N - 1) // 2)) + s_Nq(N, q)


def half_lead(N: int, q: int) -> Fraction:
    lead = Fraction(1, 2) * q ** (N // 2) if N % 2 == 0 else Fraction(5, 2) * q ** ((N - 1) // 2)
    return lead + s_Nq(N, q)


def any_small_arc(N: int, q: int, k: int) -> Fraction:
    """Size of the cap from any complete k-arc, k < q - 5."""
    if N % 2 == 0:
        return Fraction(k, q) * q ** (N // 2) + 3 * geo(q, (N - 2) // 2) - N + 3
    return (2 + Fraction(k, q)) * q ** ((N - 1) // 2) + 3 * geo(q, (N - 3) // 2) - N + 4


def from_t2(N: int, q: int, t2: int) -> Fraction:
    if N % 2 == 0:
        return Fraction(t2, q) * q ** (N // 2) + s_Nq(N, q) - N + 1
    return (2 + Fraction(t2, q)) * q ** ((N - 1) // 2) + s_Nq(N, q) - N + 2


def five_sixths(N: int, q: int) -> Fraction:
    """For q >= 32."""
    lead = Fraction(1, 2) * q ** (N // 2) if N % 2 == 0 else Fraction(5, 2) * q ** ((N - 1) // 2)
    return lead + Fraction(5, 6) * s_Nq(N, q) + Fraction(1, 3)


def one_third_square(N: int, q: int) -> Fraction:
    """For q >= 64 a square."""
    lead = Fraction(1, 3) * q ** (N // 2) if N % 2 == 0 else Fraction(7, 3) * q ** ((N - 1) // 2)
    return lead + s_Nq(N, q) + Fraction(2, 3)


def sum_point_estimate(N: int, q: int, t: int) -> Fraction:
    tail = Fraction(t, 3 * q) * (s_Nq(N, q) - 2)
    if N % 2 == 0:
        return Fraction(t, q) * q ** (N // 2) + tail
    return (2 + Fraction(t, q)) * q ** ((N - 1) // 2) + tail


def even_t2(N: int, q: int, t2: int) -> int:
    return (t2 + 3) * q ** ((N - 2) // 2) + 3 * geo(q, (N - 4) // 2) - N + 3


def even_t2A(N: int, q: int, t2A: int) -> int:
    return (t2A + 3) * q ** ((N - 2) // 2) + 3 * geo(q, (N - 4) // 2) - N + 5


def even_t2S(N: int, q: int, t2S: int) -> int:
    return (t2S + 1) * q ** ((N - 2) // 2) + 3 * geo(q, (N - 4) // 2) - N + 5


def even_t2Splus(N: int, q: int, t2Splus: int) -> int:
    return t2Splus * (geo(q, (N - 2) // 2) + 1)


def odd_t2(N: int, q: int, t2: int) -> int:
    return 2 * q ** ((N - 1) // 2) + (t2 + 3) * q ** ((N - 3) // 2) + 3 * geo(q, (N - 5) // 2) - N + 4


def odd_t2Splus(N: int, q: int, t2Splus: int) -> int:
    return 2 * q ** ((N - 1) // 2) + t2Splus * (geo(q, (N - 3) // 2) + 1)


def _is_square(q: int) -> bool:
    return isqrt(q) ** 2 == q


@dataclass
class BoundsRow:
    N: int
    q: int
    inputs: dict[str, int]
    values: dict[str, Fraction | int] = field(default_factory=dict)
    built: dict[str, int] = field(default_factory=dict)

    def best(self) -> tuple[str, Fraction | int]:
        """Smallest bound (s_Nq is an ingredient, not a bound)."""
        vals = bound_values(self)
        name = min(vals, key=lambda k: vals[k])
        return name, vals[name]

    def as_dict(self) -> dict:
        def fmt(v):
            return int(v) if isinstance(v, int) or v.denominator == 1 else str(v)

        return {
            "N": self.N,
            "q": self.q,
            "inputs": dict(self.inputs),
            "bounds": {k: fmt(v) for k, v in self.values.items()},
            "built": dict(self.built),
        }


def bounds_report(N: int, q: int, t2: int | None = None, t2A: int | None = None,
                  t2S: int | None = None, t2Splus: int | None = None,
                  built: dict[str, int] | None = None) -> BoundsRow:
    """Evaluate every bound that applies to (N, q) with the given arc sizes.

    When ``t2Splus`` is not given, the tabulated value for q <= 2^15 is used.
    ``built`` maps a construction name to the size of a cap actually built,
    for side-by-side comparison.
    """
    if N < 3 or q < 4 or q & (q - 1):
        raise ValueError(f"need N >= 3 and q a power of two, got N={N}, q={q}")
    h = q.bit_length() - 1
    if t2Splus is None:
        t2Splus = T_Q.get(h)
    inputs = {k: v for k, v in dict(t2=t2, t2A=t2A, t2S=t2S, t2Splus=t2Splus).items() if v is not None}
    row = BoundsRow(N, q, inputs)
    v = row.values
    v["s_Nq"] = s_Nq(N, q)
    v["classical"] = classical(N, q)
    if q >= 32:
        v["half_lead"] = half_lead(N, q)
        v["five_sixths"] = five_sixths(N, q)
    if q >= 64 and _is_square(q):
        v["one_third_square"] = one_third_square(N, q)
    even = N % 2 == 0
    if t2 is not None and q > 8:
        v["from_t2"] = from_t2(N, q, t2)
        if t2 < q - 5 and N >= 4:
            v["any_small_arc"] = any_small_arc(N, q, t2)
        if even and N > 2:
            v["even_t2"] = even_t2(N, q, t2)
        if not even and N > 3:
            v["odd_t2"] = odd_t2(N, q, t2)
    if t2A is not None and q > 8 and even:
        v["even_t2A"] = even_t2A(N, q, t2A)
    if t2S is not None and q > 8 and even:
        v["even_t2S"] = even_t2S(N, q, t2S)
    if t2Splus is not None:
        if even and N > 2:
            v["even_t2Splus"] = even_t2Splus(N, q, t2Splus)
        if not even and N > 3:
            v["odd_t2Splus"] = odd_t2Splus(N, q, t2Splus)
        if h <= 15 and N >= 4:
            v["sum_point_estimate"] = sum_point_estimate(N, q, t2Splus)
    row.built = dict(built or {})
    return row


def bound_values(row: BoundsRow) -> dict[str, Fraction | int]:
    return {k: x for k, x in row.values.items() if k != "s_Nq"}
