"""Lie-Poisson brackets on S(q) and their phi_s-deformations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from . import linalg as la
from .algebra import LieAlgebra, Splitting, _coords
from .linalg import as_rational
from .poly import BITS, Poly, RingMismatchError, _accumulate_product, _finish
from .polyring import InvalidParameterError

Table = Mapping[tuple[int, int], Mapping[int, object]]


def _algebra_of(F: Poly, G: Poly) -> LieAlgebra:
    if F.ring != G.ring:
        raise RingMismatchError("polynomials belong to different algebras")
    g = F.ring.algebra
    if not isinstance(g, LieAlgebra):
        raise RingMismatchError("polynomials are not elements of a symmetric algebra S(q)")
    return g


def lie_poisson(F: Poly, G: Poly, table: Table) -> Poly:
    """sum_{i<j} c_ij^k x_k (dF/dx_i dG/dx_j - dF/dx_j dG/dx_i).

    ``table`` uses the same layout as :attr:`LieAlgebra.table`.
    """
    ring = F.ring
    n = ring.nvars
    if F.is_constant() or G.is_constant():
        return ring.zero()
    dF = [F.diff(i).raw_terms() for i in range(n)]
    dG = [G.diff(j).raw_terms() for j in range(n)]
    # T_i = sum_j dG_j * [b_i, b_j], then {F, G} = sum_i dF_i * T_i
    lin: dict[int, list[tuple[int, dict[int, object]]]] = {i: [] for i in range(n)}
    for (i, j), out in table.items():
        lin[i].append((j, out))
        lin[j].append((i, {k: -c for k, c in out.items()}))
    acc: dict[int, object] = {}
    for i in range(n):
        if not dF[i]:
            continue
        T: dict[int, object] = {}
        for j, out in lin[i]:
            g_j = dG[j]
            if not g_j:
                continue
            for k, c in out.items():
                shift = 1 << (BITS * k)
                for key, v in g_j.items():
                    kk = key + shift
                    T[kk] = T.get(kk, 0) + c * v
        T = {k: v for k, v in T.items() if v}
        if T:
            _accumulate_product(acc, dF[i], T)
    return _finish(ring, acc)


def poisson_bracket(F: Poly, G: Poly) -> Poly:
    """The Lie-Poisson bracket {F, G}, with {x, y} = [x, y] on q."""
    g = _algebra_of(F, G)
    return lie_poisson(F, G, g.table)


def bracket_at(F: Poly, G: Poly, gamma) -> object:
    """{F, G}(gamma) computed as gamma([d_gamma F, d_gamma G])."""
    g = _algebra_of(F, G)
    pt = _coords(gamma)
    dF = tuple(F.diff(i).evaluate(pt) for i in range(g.dim))
    dG = tuple(G.diff(i).evaluate(pt) for i in range(g.dim))
    return la.dot(pt, g.bracket(dF, dG))


def _nonzero_s(s):
    s = as_rational(s)
    if s == 0:
        raise InvalidParameterError("s must be nonzero")
    return s


def deformed_bracket_vec(x: Sequence, y: Sequence, split: Splitting, s) -> tuple:
    """[x, y]_(s) = phi_s^{-1} [phi_s x, phi_s y]."""
    s = _nonzero_s(s)
    g = split.algebra
    w = g.bracket(split.phi_vector(la.vec(x), s), split.phi_vector(la.vec(y), s))
    return split.phi_vector(w, as_rational(Fraction(1) / s))


def deformed_bracket_closed_form(x: Sequence, y: Sequence, split: Splitting, s) -> tuple:
    """[x_f,y_f] + [x_f,y_m] + [x_m,y_f] + s [x_m,y_m]_m + s^2 [x_m,y_m]_f.

    Valid for an f-stable splitting.  The first summand pairs x_f with y_f.
    """
    s = _nonzero_s(s)
    g = split.algebra
    xf, xm = split.project_f(x), split.project_m(x)
    yf, ym = split.project_f(y), split.project_m(y)
    mm = g.bracket(xm, ym)
    parts = [
        g.bracket(xf, yf),
        g.bracket(xf, ym),
        g.bracket(xm, yf),
        la.scale(s, split.project_m(mm)),
        la.scale(s * s, split.project_f(mm)),
    ]
    out = la.zeros(g.dim)
    for p in parts:
        out = la.add(out, p)
    return out


def deformed_table(split: Splitting, s) -> dict[tuple[int, int], dict[int, object]]:
    """Structure constants of [ , ]_(s) in the ambient basis."""
    s = _nonzero_s(s)
    g = split.algebra
    e = [la.unit(g.dim, i) for i in range(g.dim)]
    table = {}
    for i, j in itertools.combinations(range(g.dim), 2):
        v = deformed_bracket_vec(e[i], e[j], split, s)
        entry = {k: c for k, c in enumerate(v) if c}
        if entry:
            table[i, j] = entry
    return table


@dataclass(frozen=True, eq=False)
class BracketFamily:
    """The bracket [ , ]_(s) on q and its Lie-Poisson bracket on S(q)."""

    algebra: LieAlgebra
    split: Splitting | None
    s: object = 1

    def __post_init__(self):
        object.__setattr__(self, "s", _nonzero_s(self.s))
        if self.split is None and self.s != 1:
            raise InvalidParameterError("a deformation with s != 1 needs a splitting")

    @cached_property
    def table(self):
        if self.split is None or self.s == 1:
            return self.algebra.table
        return deformed_table(self.split, self.s)

    def bracket_vec(self, x, y) -> tuple:
        if self.split is None:
            return self.algebra.bracket(x, y)
        return deformed_bracket_vec(x, y, self.split, self.s)

    def poisson(self, F: Poly, G: Poly) -> Poly:
        _algebra_of(F, G)
        return lie_poisson(F, G, self.table)

    def jacobi_defects(self) -> list[tuple[int, int, int]]:
        n = self.algebra.dim
        e = [la.unit(n, i) for i in range(n)]
        br = {(i, j): self.bracket_vec(e[i], e[j]) for i in range(n) for j in range(n)}
        bad = []
        for i, j, k in itertools.combinations(range(n), 3):
            tot = la.add(
                la.add(self.bracket_vec(br[i, j], e[k]), self.bracket_vec(br[j, k], e[i])),
                self.bracket_vec(br[k, i], e[j]),
            )
            if not la.is_zero(tot):
                bad.append((i, j, k))
        return bad

    def antisymmetry_defects(self) -> list[tuple[int, int]]:
        n = self.algebra.dim
        e = [la.unit(n, i) for i in range(n)]
        return [
            (i, j)
            for i in range(n)
            for j in range(i, n)
            if la.add(self.bracket_vec(e[i], e[j]), self.bracket_vec(e[j], e[i])) != la.zeros(n)
        ]

    def f_undeformed_defects(self) -> list[tuple[int, int]]:
        """Pairs (f-basis index, basis index) where [x, y]_(s) != [x, y]."""
        if self.split is None:
            return []
        g = self.algebra
        bad = []
        for a, x in enumerate(self.split.f_basis):
            for j in range(g.dim):
                y = la.unit(g.dim, j)
                if self.bracket_vec(x, y) != g.bracket(x, y):
                    bad.append((a, j))
        return bad


def deformed_poisson_bracket(F: Poly, G: Poly, split: Splitting, s) -> Poly:
    """{F, G}_(s): the Lie-Poisson bracket of the deformed structure."""
    s = _nonzero_s(s)
    _algebra_of(F, G)
    if s == 1:
        return poisson_bracket(F, G)
    return lie_poisson(F, G, _cached_table(split, s))


@lru_cache(maxsize=64)
def _cached_table(split: Splitting, s):
    return deformed_table(split, s)


def pencil_defect(F: Poly, G: Poly, split: Splitting, s, s_prime, s_tilde) -> Poly:
    """{F,G}_(s) + {F,G}_(s') - 2 {F,G}_(s~)."""
    return (
        deformed_poisson_bracket(F, G, split, s)
        + deformed_poisson_bracket(F, G, split, s_prime)
        - deformed_poisson_bracket(F, G, split, s_tilde).scale(2)
    )


def pencil_structure_defect(split: Splitting, s, s_prime, s_tilde) -> dict[tuple[int, int], dict[int, object]]:
    """Structure constants of c_(s) + c_(s') - 2 c_(s~).

    The pencil defect is bilinear in the structure constants, so an empty
    result means pencil_defect vanishes for every pair F, G.
    """
    tabs = [deformed_table(split, s), deformed_table(split, s_prime), deformed_table(split, s_tilde)]
    weights = [1, 1, -2]
    out: dict[tuple[int, int], dict[int, object]] = {}
    for w, tab in zip(weights, tabs):
        for ij, entry in tab.items():
            slot = out.setdefault(ij, {})
            for k, c in entry.items():
                slot[k] = slot.get(k, 0) + w * c
    return {ij: {k: as_rational(c) for k, c in e.items() if c} for ij, e in out.items() if any(e.values())}


def is_pythagorean_triple(s, s_prime, s_tilde) -> bool:
    """True when 2 s~^2 = s^2 + s'^2."""
    s, s_prime, s_tilde = (as_rational(v) for v in (s, s_prime, s_tilde))
    return 2 * s_tilde * s_tilde == s * s + s_prime * s_prime
