"""Table-driven arithmetic in GF(2^h), 2 <= h <= 10.

Elements are plain ints whose bit i is the coefficient of x^i in the
polynomial basis, so addition is XOR.  Multiplication goes through
log/antilog tables built from a pinned (Conway) modulus; a full q x q
product table is also exposed as a numpy array for the vectorized
geometry code.
"""
from __future__ import annotations

import json
from functools import cached_property, lru_cache
from importlib import resources

import numpy as np

from .errors import DivisionByZero, NotFound, PreconditionViolated

MIN_H = 2
MAX_H = 10


@lru_cache(maxsize=None)
def modulus_table() -> dict:
    """The shipped table of pinned moduli, ``{"version": .., "moduli": {h: int}}``."""
    raw = resources.files("capforge.data").joinpath("conway_gf2.json").read_text()
    data = json.loads(raw)
    data["moduli"] = {int(h): int(m) for h, m in data["moduli"].items()}
    return data


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class FieldCtx:
    """Arithmetic context for GF(2^h).

    Immutable after construction; share it freely.
    """

    def __init__(self, h: int, modulus: int | None = None):
        if not MIN_H <= h <= MAX_H:
            raise PreconditionViolated(f"h must lie in {MIN_H}..{MAX_H}, got {h}")
        if modulus is None:
            modulus = modulus_table()["moduli"][h]
        if modulus.bit_length() != h + 1:
            raise PreconditionViolated(f"modulus {modulus:#x} does not have degree {h}")
        self.h = h
        self.q = 1 << h
        self.modulus = modulus
        self.primitive = 2  # the class of x

        q = self.q
        antilog = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            if log[x] != -1:
                raise PreconditionViolated(f"modulus {modulus:#x} is not primitive")
            antilog[i] = x
            log[x] = i
            x <<= 1
            if x & q:
                x ^= modulus
        if x != 1:
            raise PreconditionViolated(f"modulus {modulus:#x} is not primitive")
        antilog[q - 1:] = antilog[: q - 1]
        antilog.setflags(write=False)
        log.setflags(write=False)
        self.antilog = antilog
        self.log = log
        self._log = log.tolist()
        self._antilog = antilog.tolist()

    def __repr__(self) -> str:
        return f"FieldCtx(h={self.h}, modulus={self.modulus:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.h, self.modulus) == (other.h, other.modulus)

    def __hash__(self) -> int:
        return hash((self.h, self.modulus))

    @property
    def elements(self) -> range:
        return range(self.q)

    # scalar arithmetic

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._antilog[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in GF(%d)" % self.q)
        return self._antilog[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZero("0 raised to a negative power")
            return 1 if n == 0 else 0
        return self._antilog[(self._log[a] * n) % (self.q - 1)]

    def sqrt(self, a: int) -> int:
        # squaring is the Frobenius automorphism; its inverse is x -> x^(q/2)
        return self.pow(a, self.q >> 1)

    def exp(self, n: int) -> int:
        """primitive ** n."""
        return self._antilog[n % (self.q - 1)]

    def trace(self, a: int) -> int:
        t = 0
        x = a
        for _ in range(self.h):
            t ^= x
            x = self.mul(x, x)
        assert t in (0, 1)
        return t

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n = self.q - 1
        k = n
        for p in _prime_factors(n):
            while k % p == 0 and self.pow(a, k // p) == 1:
                k //= p
        return k

    def is_primitive(self, a: int) -> bool:
        return a != 0 and self.order(a) == self.q - 1

    def solve_artin_schreier(self, d: int) -> int | None:
        """Smallest w with w^2 + w = d, or None when trace(d) = 1.

        The other root is w ^ 1.
        """
        return self._as_roots.get(d)

    @cached_property
    def _as_roots(self) -> dict[int, int]:
        roots: dict[int, int] = {}
        for w in range(self.q):
            roots.setdefault(self.mul(w, w) ^ w, w)
        return roots

    def find_primitive_with_trace_one(self) -> int:
        for g in range(2, self.q):
            if self.trace(g) == 1 and self.is_primitive(g):
                return g
        raise NotFound(f"no primitive element of trace 1 in GF({self.q})")

    def subfield(self, degree: int) -> list[int]:
        """Elements of the subfield GF(2^degree), in increasing encoding."""
        if self.h % degree:
            raise PreconditionViolated(f"GF(2^{degree}) is not a subfield of GF(2^{self.h})")
        r = 1 << degree
        return [a for a in range(self.q) if self.pow(a, r) == a]

    # vectorized tables

    @cached_property
    def mul_table(self) -> np.ndarray:
        """q x q product table (int64); ``mul_table[a, b] == mul(a, b)``."""
        q = self.q
        lg = self.log[1:]
        t = np.zeros((q, q), dtype=np.int64)
        t[1:, 1:] = self.antilog[lg[:, None] + lg[None, :]]
        t.setflags(write=False)
        return t

    @cached_property
    def inv_table(self) -> np.ndarray:
        """``inv_table[a] == inv(a)`` for a != 0; ``inv_table[0] == 0``."""
        t = np.zeros(self.q, dtype=np.int64)
        t[1:] = self.antilog[(self.q - 1 - self.log[1:]) % (self.q - 1)]
        t.setflags(write=False)
        return t

    @cached_property
    def square_table(self) -> np.ndarray:
        t = self.mul_table[np.arange(self.q), np.arange(self.q)].copy()
        t.setflags(write=False)
        return t

    def vmul(self, a, b) -> np.ndarray:
        return self.mul_table[a, b]


@lru_cache(maxsize=None)
def field(q: int) -> FieldCtx:
    """Cached context for GF(q), q = 2^h, with the pinned modulus."""
    h = q.bit_length() - 1
    if q != 1 << h:
        raise PreconditionViolated(f"q={q} is not a power of 2")
    return FieldCtx(h)
