"""Points, lines and ranks in PG(N, q), q even.

A point is kept in normalized form (first nonzero coordinate equal to 1)
together with a dense rank in ``0 .. |PG(N,q)| - 1``.  Ranks are laid out
in blocks by the position of the leading one, block 0 first; inside a
block the coordinates after the leading one are read as a base-q number
(most significant first).  The bulk helpers at the bottom work on int64
arrays of shape ``(..., N + 1)`` and are what the coverage code uses.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicatePoint,
    IntegralityViolated,
    PreconditionViolated,
    ZeroVector,
)
from .gf2e import FieldCtx


@dataclass(frozen=True, order=True)
class Point:
    rank: int
    coords: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self) -> str:
        return f"Point{self.coords}"


def num_points(N: int, q: int) -> int:
    return (q ** (N + 1) - 1) // (q - 1)


class ProjectiveSpace:
    """PG(N, q) over a fixed field context."""

    def __init__(self, N: int, F: FieldCtx):
        if N < 1:
            raise PreconditionViolated(f"N must be >= 1, got {N}")
        self.N = N
        self.F = F
        q = F.q
        self.q = q
        self.n_points = num_points(N, q)
        # weight of coordinate t in the base-q reading
        self._weights = np.array([q ** (N - t) for t in range(N + 1)], dtype=np.int64)
        # block i holds the q^(N-i) points whose leading one sits at position i
        offsets = [0]
        for i in range(N):
            offsets.append(offsets[-1] + q ** (N - i))
        self._offsets = np.array(offsets, dtype=np.int64)

    def __repr__(self) -> str:
        return f"PG({self.N},{self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectiveSpace) and (self.N, self.F) == (other.N, other.F)

    def __hash__(self) -> int:
        return hash((self.N, self.F))

    # scalar API

    def _check_len(self, coords) -> None:
        if len(coords) != self.N + 1:
            raise DimensionMismatch(
                f"expected {self.N + 1} coordinates for {self!r}, got {len(coords)}"
            )

    def normalize(self, raw: Sequence[int]) -> Point:
        self._check_len(raw)
        for lead, c in enumerate(raw):
            if c:
                break
        else:
            raise ZeroVector("the zero vector is not a projective point")
        F = self.F
        inv = F.inv(int(raw[lead]))
        coords = tuple(F.mul(int(c), inv) for c in raw)
        return Point(self._rank_normalized(coords, lead), coords)

    def _rank_normalized(self, coords, lead: int) -> int:
        v = 0
        for c in coords[lead + 1:]:
            v = v * self.q + c
        return int(self._offsets[lead]) + v

    def rank(self, coords: Sequence[int]) -> int:
        return self.normalize(coords).rank

    def point(self, rank: int) -> Point:
        if not 0 <= rank < self.n_points:
            raise IndexError(f"rank {rank} out of range for {self!r}")
        lead = int(np.searchsorted(self._offsets, rank, side="right")) - 1
        v = rank - int(self._offsets[lead])
        tail = []
        for _ in range(self.N - lead):
            v, r = divmod(v, self.q)
            tail.append(r)
        coords = (0,) * lead + (1,) + tuple(reversed(tail))
        return Point(rank, coords)

    def enumerate_points(self) -> Iterator[Point]:
        for r in range(self.n_points):
            yield self.point(r)

    def contains_coords(self, p: Point) -> bool:
        return len(p.coords) == self.N + 1

    def collinear(self, p1: Point, p2: Point, p3: Point) -> bool:
        if p1 == p2 or p1 == p3 or p2 == p3:
            raise DuplicatePoint("collinearity needs three distinct points")
        return matrix_rank([p1.coords, p2.coords, p3.coords], self.F) == 2

    def line_through(self, p1: Point, p2: Point) -> list[Point]:
        """The q + 1 points of the line p1 p2: p1, p2, then p1 + lambda p2."""
        if p1 == p2:
            raise DuplicatePoint("a line needs two distinct points")
        F = self.F
        out = [p1, p2]
        for lam in range(1, self.q):
            raw = [a ^ F.mul(lam, b) for a, b in zip(p1.coords, p2.coords)]
            out.append(self.normalize(raw))
        return out

    # bulk API (int64 arrays, last axis = coordinates)

    def normalize_array(self, arr: np.ndarray) -> np.ndarray:
        nz = arr != 0
        if not nz.any(axis=-1).all():
            raise ZeroVector("zero vector in batch")
        lead = nz.argmax(axis=-1)
        lv = np.take_along_axis(arr, lead[..., None], axis=-1)
        return self.F.mul_table[arr, self.F.inv_table[lv]]

    def rank_normalized_array(self, arr: np.ndarray) -> np.ndarray:
        lead = (arr != 0).argmax(axis=-1)
        v = arr @ self._weights
        return self._offsets[lead] + v - self._weights[lead]

    def rank_array(self, arr: np.ndarray) -> np.ndarray:
        """Ranks of arbitrary nonzero representatives."""
        return self.rank_normalized_array(self.normalize_array(arr))

    def coords_array(self, ranks) -> np.ndarray:
        """Normalized coordinates for an array of ranks."""
        ranks = np.asarray(ranks, dtype=np.int64)
        lead = np.searchsorted(self._offsets, ranks, side="right") - 1
        v = ranks - self._offsets[lead] + self._weights[lead]
        out = np.empty(ranks.shape + (self.N + 1,), dtype=np.int64)
        for t in range(self.N, -1, -1):
            out[..., t] = v % self.q
            v = v // self.q
        return out

    def points_from_array(self, arr: np.ndarray) -> list[Point]:
        arr = self.normalize_array(np.asarray(arr, dtype=np.int64))
        ranks = self.rank_normalized_array(arr)
        return [Point(int(r), tuple(int(c) for c in row)) for r, row in zip(ranks, arr)]


def as_array(points: Sequence[Point]) -> np.ndarray:
    """Stack point coordinates into an int64 array."""
    if not points:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array([p.coords for p in points], dtype=np.int64)


def matrix_rank(rows: Sequence[Sequence[int]], F: FieldCtx) -> int:
    """Rank over GF(q) by Gaussian elimination."""
    m = [list(map(int, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = F.inv(m[rank][col])
        m[rank] = [F.mul(inv, x) for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a ^ F.mul(f, b) for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


# named subspaces and embeddings


@dataclass(frozen=True)
class Subspace:
    """One of the named subspaces used by the constructions.

    ``kind`` is ``"H"`` (X_0 = .. = X_i = 0), ``"L1"`` (X_1 = 0, with the
    coordinates indexed from 1), ``"L2"`` (X_1 = X_2 = 0, same indexing) or
    ``"V"`` (X_0 = .. = X_{2s-2j-2} = 0 and X_{2s-2j-1} = X_{2s-2j}, inside
    PG(2s+2, q)).
    """

    kind: str
    N: int
    param: int = 0

    def contains(self, p: Point) -> bool:
        c = p.coords
        if len(c) != self.N + 1:
            raise DimensionMismatch(f"point of PG({len(c) - 1}) tested against subspace of PG({self.N})")
        if self.kind == "H":
            return not any(c[: self.param + 1])
        if self.kind == "L1":
            return c[0] == 0
        if self.kind == "L2":
            return c[0] == 0 and c[1] == 0
        if self.kind == "V":
            s, j = (self.N - 2) // 2, self.param
            k = 2 * s - 2 * j - 1
            return not any(c[:k]) and c[k] == c[k + 1]
        raise ValueError(f"unknown subspace kind {self.kind!r}")


def H(i: int, N: int) -> Subspace:
    return Subspace("H", N, i)


def V(j: int, s: int) -> Subspace:
    if not 0 <= j <= s - 1:
        raise DimensionMismatch(f"V_(2j+2) needs 0 <= j <= s-1, got j={j}, s={s}")
    return Subspace("V", 2 * s + 2, j)


def embed_prefix_zeros(coords: Sequence[int], n_zeros: int) -> tuple[int, ...]:
    """Natural embedding into H_{n_zeros - 1}: prepend zero coordinates."""
    return (0,) * n_zeros + tuple(coords)


def phi(coords: Sequence[int], j: int, s: int) -> tuple[int, ...]:
    """Map PG(2j+2, q) onto V_{2j+2} inside PG(2s+2, q).

    (Y_0, .., Y_{2j+2}) -> (0, .., 0, Y_0, Y_0, Y_1, .., Y_{2j+2}).
    """
    if len(coords) != 2 * j + 3:
        raise DimensionMismatch(f"phi_{j} expects {2 * j + 3} coordinates, got {len(coords)}")
    if not 0 <= j <= s - 1:
        raise DimensionMismatch(f"phi_j needs 0 <= j <= s-1, got j={j}, s={s}")
    y = tuple(coords)
    return (0,) * (2 * s - 2 * j - 1) + (y[0],) + y


def embed(p: Point, target: ProjectiveSpace, how: str = "H", **kw) -> Point:
    """Embed ``p`` into ``target`` by a named map.

    ``how="H"`` prepends zeros (the natural embedding in H_i, with the
    number of zeros fixed by the dimensions); ``how="phi"`` applies the
    duplication map onto V_{2j+2} and needs ``j``.
    """
    n = len(p.coords)
    if how == "H":
        k = target.N + 1 - n
        if k < 0:
            raise DimensionMismatch(f"cannot embed PG({n - 1}) into {target!r}")
        raw = embed_prefix_zeros(p.coords, k)
    elif how == "phi":
        s = (target.N - 2) // 2
        if target.N != 2 * s + 2:
            raise DimensionMismatch("phi targets PG(2s+2, q)")
        raw = phi(p.coords, kw["j"], s)
    else:
        raise ValueError(f"unknown embedding {how!r}")
    return target.normalize(raw)


# plane projectivities


class Projectivity:
    """A projectivity of PG(2, q) given by a 3 x 3 matrix acting on columns."""

    def __init__(self, matrix: Sequence[Sequence[int]], F: FieldCtx):
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise DimensionMismatch("plane projectivities are 3 x 3")
        self.matrix = m
        self.F = F
        if self.det() == 0:
            raise PreconditionViolated("singular matrix")

    @classmethod
    def identity(cls, F: FieldCtx) -> "Projectivity":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)), F)

    def __repr__(self) -> str:
        return f"Projectivity({self.matrix})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Projectivity) and self.matrix == other.matrix and self.F == other.F

    def __hash__(self) -> int:
        return hash(self.matrix)

    def det(self) -> int:
        (a, b, c), (d, e, f), (g, h, i) = self.matrix
        mul = self.F.mul
        return (
            mul(a, mul(e, i) ^ mul(f, h))
            ^ mul(b, mul(d, i) ^ mul(f, g))
            ^ mul(c, mul(d, h) ^ mul(e, g))
        )

    def apply_raw(self, coords: Sequence[int]) -> tuple[int, ...]:
        mul = self.F.mul
        return tuple(
            mul(r[0], coords[0]) ^ mul(r[1], coords[1]) ^ mul(r[2], coords[2]) for r in self.matrix
        )

    def __matmul__(self, other: "Projectivity") -> "Projectivity":
        mul = self.F.mul
        a, b = self.matrix, other.matrix
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                v = 0
                for k in range(3):
                    v ^= mul(a[i][k], b[k][j])
                row.append(v)
            out.append(row)
        return Projectivity(out, self.F)

    def is_integral_for(self, points: Sequence[Point]) -> bool:
        for p in points:
            img = self.apply_raw(p.coords)
            lead = next(c for c in img if c)
            if lead != 1:
                return False
        return True


def apply_projectivity(psi: Projectivity, p: Point, plane: ProjectiveSpace, integral_mode: bool = False) -> Point:
    if plane.N != 2 or len(p.coords) != 3:
        raise DimensionMismatch("projectivities act on PG(2, q)")
    img = psi.apply_raw(p.coords)
    if integral_mode:
        lead = next(c for c in img if c)
        if lead != 1:
            raise IntegralityViolated(f"{psi!r} sends {p!r} to the unnormalized vector {img}")
    return plane.normalize(img)


def line_dual(p: Sequence[int], r: Sequence[int], F: FieldCtx) -> tuple[int, int, int]:
    """Coordinates (l0, l1, l2) of the plane line through two points.

    Characteristic 2, so the cross product needs no signs.
    """
    mul = F.mul
    return (
        mul(p[1], r[2]) ^ mul(p[2], r[1]),
        mul(p[2], r[0]) ^ mul(p[0], r[2]),
        mul(p[0], r[1]) ^ mul(p[1], r[0]),
    )
