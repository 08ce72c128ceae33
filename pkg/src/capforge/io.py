"""Plain-text formats for points, arcs and caps.

Points: ``N q : c0,c1,...,cN``.  Arc files start with
``arc q=<q> n=<n> modulus=<hex>`` and cap files with
``cap N=<N> q=<q> n=<n> provenance=<tag;params> modulus=<hex>``; both
continue with one point per line as comma-separated integers.  Blank lines
and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .arcs.core import PlaneArc
from .caps.core import Cap, Provenance
from .errors import DimensionMismatch
from .gf2e import FieldCtx, field
from .projgeom import Point, ProjectiveSpace


class FormatError(ValueError):
    pass


def format_point(p: Point | Iterable[int], q: int) -> str:
    c = p.coords if isinstance(p, Point) else tuple(p)
    return f"{len(c) - 1} {q} : " + ",".join(str(int(x)) for x in c)


def parse_point(line: str) -> tuple[int, int, tuple[int, ...]]:
    head, sep, body = line.partition(":")
    if not sep:
        raise FormatError(f"missing ':' in point {line!r}")
    try:
        N, q = (int(x) for x in head.split())
        coords = tuple(int(x) for x in body.split(","))
    except ValueError as e:
        raise FormatError(f"bad point {line!r}") from e
    if len(coords) != N + 1:
        raise DimensionMismatch(f"point {line!r} has {len(coords)} coordinates, expected {N + 1}")
    return N, q, coords


def _header(line: str, kind: str) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != kind:
        raise FormatError(f"expected a '{kind}' header, got {line!r}")
    out = {}
    for item in parts[1:]:
        k, sep, v = item.partition("=")
        if not sep:
            raise FormatError(f"bad header field {item!r}")
        out[k] = v
    return out


def _body(lines: list[str]) -> list[tuple[int, ...]]:
    rows = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if ":" in line:
            line = line.partition(":")[2]
        try:
            rows.append(tuple(int(x) for x in line.split(",")))
        except ValueError as e:
            raise FormatError(f"bad point line {line!r}") from e
    return rows


def _field(q: int, modulus_hex: str | None) -> FieldCtx:
    F = field(q)
    if modulus_hex is not None and int(modulus_hex, 16) != F.modulus:
        raise FormatError(f"file modulus {modulus_hex} differs from the pinned {F.modulus:#x}")
    return F


def _lines(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def dumps_arc(K: PlaneArc) -> str:
    out = [f"arc q={K.q} n={len(K)} modulus={K.F.modulus:#x}"]
    out += [",".join(str(x) for x in p.coords) for p in K.points]
    return "\n".join(out) + "\n"


def loads_arc(text: str) -> PlaneArc:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty arc file")
    h = _header(lines[0], "arc")
    q = int(h["q"])
    F = _field(q, h.get("modulus"))
    rows = _body(lines[1:])
    if "n" in h and int(h["n"]) != len(rows):
        raise FormatError(f"header says n={h['n']}, file has {len(rows)} points")
    if any(len(r) != 3 for r in rows):
        raise DimensionMismatch("arc points need 3 coordinates")
    return PlaneArc(rows, F)


def dumps_cap(C: Cap) -> str:
    out = [f"cap N={C.N} q={C.q} n={len(C)} provenance={C.provenance.format()} modulus={C.F.modulus:#x}"]
    out += [",".join(str(int(x)) for x in row) for row in C.reps]
    return "\n".join(out) + "\n"


def loads_cap(text: str) -> Cap:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty cap file")
    h = _header(lines[0], "cap")
    N, q = int(h["N"]), int(h["q"])
    F = _field(q, h.get("modulus"))
    rows = _body(lines[1:])
    if "n" in h and int(h["n"]) != len(rows):
        raise FormatError(f"header says n={h['n']}, file has {len(rows)} points")
    if any(len(r) != N + 1 for r in rows):
        raise DimensionMismatch(f"cap points need {N + 1} coordinates")
    prov = Provenance.parse(h["provenance"]) if "provenance" in h else Provenance("IMPORTED")
    return Cap(rows, N, F, prov)


def read_arc(path: str | Path) -> PlaneArc:
    return loads_arc(Path(path).read_text())


def read_cap(path: str | Path) -> Cap:
    return loads_cap(Path(path).read_text())


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text)


def read_any(path: str | Path) -> PlaneArc | Cap:
    text = Path(path).read_text()
    first = next(iter(_lines(text)), "")
    if first.startswith("arc"):
        return loads_arc(text)
    if first.startswith("cap"):
        return loads_cap(text)
    raise FormatError(f"{path}: unknown file type")


def arc_as_cap(K: PlaneArc) -> Cap:
    return Cap([p.coords for p in K.points], 2, K.F, Provenance.make("IMPORTED", arc=K.digest()))


def point_in(space: ProjectiveSpace, line: str) -> Point:
    N, q, coords = parse_point(line)
    if N != space.N or q != space.q:
        raise DimensionMismatch(f"point of PG({N},{q}) read into {space!r}")
    return space.normalize(coords)
