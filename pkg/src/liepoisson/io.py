"""Plain-text formats: structure constants, vector lists and polynomial lists.

Structure-constant files hold one record ``i j k value`` per line meaning
[b_i, b_j] = ... + value * b_k with 1-based indices; values are integers or
``p/q``.  Blank lines and ``#`` comments are ignored.  An optional
``dim N`` line fixes the dimension when the last basis elements are central,
and an optional ``labels a b c ...`` line names the basis.

Vector files hold one vector per line, entries separated by whitespace.
Polynomial files hold one polynomial per line in canonical text.
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .algebra import LieAlgebra, from_structure_constants
from .linalg import as_rational, vec
from .poly import Poly, PolyRing, parse_poly


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _lines(source: str) -> Iterable[tuple[int, str]]:
    for no, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


def _rational(token: str, line: int):
    if not _RATIONAL_RE.fullmatch(token):
        raise FormatError(f"expected an integer or p/q, got {token!r}", line)
    try:
        return as_rational(Fraction(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational number: {token!r}", line) from exc


def _text(source) -> str:
    return Path(source).read_text() if isinstance(source, Path) else source


def parse_structure_constants(source: str | Path, *, check: bool = True) -> LieAlgebra:
    records: dict[tuple[int, int, int], object] = {}
    dim = 0
    labels: list[str] | None = None
    for no, line in _lines(_text(source)):
        parts = line.split()
        if parts[0] == "dim":
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError("expected 'dim N'", no)
            dim = max(dim, int(parts[1]))
            continue
        if parts[0] == "labels":
            labels = parts[1:]
            continue
        if len(parts) != 4:
            raise FormatError("expected 'i j k value'", no)
        try:
            i, j, k = (int(p) for p in parts[:3])
        except ValueError as exc:
            raise FormatError("indices must be integers", no) from exc
        if min(i, j, k) < 1:
            raise FormatError("indices are 1-based", no)
        key = (i - 1, j - 1, k - 1)
        value = _rational(parts[3], no)
        if key in records and records[key] != value:
            raise FormatError(f"conflicting values for ({i}, {j}, {k})", no)
        records[key] = value
        dim = max(dim, i, j, k)
    if labels is not None:
        if dim and len(labels) < dim:
            raise FormatError(f"{len(labels)} labels for dimension {dim}")
        dim = len(labels)
    if dim == 0:
        raise FormatError("no structure constants and no dimension given")
    labels = labels or [f"b{i + 1}" for i in range(dim)]
    return from_structure_constants(labels, records, check=check)


def format_structure_constants(g: LieAlgebra) -> str:
    out = [f"dim {g.dim}", "labels " + " ".join(g.basis_labels)]
    for (i, j) in sorted(g.table):
        for k in sorted(g.table[i, j]):
            out.append(f"{i + 1} {j + 1} {k + 1} {g.table[i, j][k]}")
    return "\n".join(out) + "\n"


def parse_vectors(source: str | Path, dim: int | None = None) -> list[tuple]:
    vectors = []
    for no, line in _lines(_text(source)):
        v = vec(_rational(t, no) for t in line.replace(",", " ").split())
        if dim is not None and len(v) != dim:
            raise FormatError(f"vector has {len(v)} entries, expected {dim}", no)
        vectors.append(v)
    if vectors and len({len(v) for v in vectors}) != 1:
        raise FormatError("vectors have different lengths")
    return vectors


def format_vectors(vectors: Sequence[Sequence]) -> str:
    return "".join(" ".join(str(as_rational(a)) for a in v) + "\n" for v in vectors)


def parse_polys(source: str | Path, ring: PolyRing) -> list[Poly]:
    out = []
    for no, line in _lines(_text(source)):
        try:
            out.append(parse_poly(line, ring))
        except ValueError as exc:
            raise FormatError(str(exc), no) from exc
    return out


def format_polys(polys: Sequence[Poly]) -> str:
    return "".join(p.to_text() + "\n" for p in polys)
