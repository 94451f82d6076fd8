"""Exact rational linear algebra on small dense matrices.

Matrices are lists of rows, vectors are tuples.  Entries are ``int`` or
``fractions.Fraction``; nothing here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

Vector = tuple
Matrix = list


class SingularMatrixError(ArithmeticError):
    pass


def as_rational(x) -> int | Fraction:
    """Coerce ``x`` to an exact rational, normalising integral Fractions to int.

    Strings such as ``"3/4"`` are accepted.  Floats are rejected: they would
    silently introduce rounding.
    """
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_rational(Fraction(x.strip()))
    if isinstance(x, Rational):
        return as_rational(Fraction(x.numerator, x.denominator))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def vec(xs: Iterable) -> Vector:
    return tuple(as_rational(x) for x in xs)


def zeros(n: int) -> Vector:
    return (0,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(as_rational(a + b) for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(as_rational(a - b) for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(as_rational(c * a) for a in v)


def dot(u: Sequence, v: Sequence):
    return as_rational(sum(a * b for a, b in zip(u, v)))


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence]) -> Vector:
    n = len(vectors[0])
    out = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return vec(out)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def identity(n: int) -> Matrix:
    return [list(unit(n, i)) for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[as_rational(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def trace(m: Sequence[Sequence]):
    return as_rational(sum(m[i][i] for i in range(len(m))))


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        den = lcm(*(Fraction(a).denominator for a in row)) if row else 1
        out.append([int(Fraction(a) * den) for a in row])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Row rank by fraction-free (Bareiss) elimination on a scaled integer copy."""
    if not rows or not rows[0]:
        return 0
    m = _integer_rows(rows)
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for k in range(c, ncols):
                row_i[k] = (p * row_i[k] - a * row_r[k]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def det(m: Sequence[Sequence]):
    """Determinant via Bareiss elimination after clearing denominators."""
    n = len(m)
    if n == 0:
        return 1
    dens = [lcm(*(Fraction(a).denominator for a in row)) for row in m]
    a = _integer_rows(m)
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for k in range(c + 1, n):
                a[i][k] = (a[c][c] * a[i][k] - a[i][c] * a[c][k]) // prev
        prev = a[c][c]
    total_den = 1
    for d in dens:
        total_den *= d
    return as_rational(Fraction(sign * a[n - 1][n - 1], total_den))


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    m = [[Fraction(a) for a in row] for row in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [a / p for a in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [[as_rational(a) for a in row] for row in m], pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {v : rows @ v = 0}, one vector per free column."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [unit(ncols, i) for i in range(ncols)]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(vec(v))
    return basis


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    chosen: list[int] = []
    basis: list[Sequence] = []
    r = 0
    for i, row in enumerate(rows):
        if rank(basis + [row]) > r:
            basis.append(row)
            chosen.append(i)
            r += 1
    return chosen


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(row) + list(unit(n, i)) for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def solve(m: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve the square system m x = b exactly."""
    return matvec(inverse(m), b)


def in_span(v: Sequence, rows: Sequence[Sequence]) -> bool:
    if not rows:
        return is_zero(v)
    return rank(list(rows) + [v]) == rank(rows)


def subspace_contains(big: Sequence[Sequence], small: Sequence[Sequence]) -> bool:
    """True iff span(small) is contained in span(big)."""
    if not small:
        return True
    if not big:
        return all(is_zero(v) for v in small)
    return rank(list(big) + list(small)) == rank(big)


def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return subspace_contains(a, b) and subspace_contains(b, a)
