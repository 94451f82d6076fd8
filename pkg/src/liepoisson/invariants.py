"""Generators of the Poisson centre of S(gl_n) and S(sl_n), and checks on them."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg as la
from .algebra import (
    InvariantForm,
    LieAlgebra,
    Splitting,
    UnsupportedAlgebraError,
    centralizer,
    trace_form,
)
from .poisson import poisson_bracket
from .poly import Poly, poly_matrix_mul, poly_matrix_trace
from .polyring import bihomogeneous_components, differential_at
from .ranklab import SpanReport, is_regular

log = logging.getLogger(__name__)


class NotCentralError(ValueError):
    def __init__(self, position: int, coordinate: int, bracket: Poly):
        label = bracket.ring.names[coordinate]
        super().__init__(f"invariant #{position} does not commute with {label}: bracket {bracket.pretty()}")
        self.position = position
        self.coordinate = coordinate
        self.bracket = bracket


@dataclass(frozen=True, eq=False)
class InvariantSet:
    algebra: LieAlgebra
    gens: tuple
    degrees: tuple
    source: str = "custom"
    labels: tuple = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"H{j + 1}" for j in range(len(self.gens))))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    @property
    def degree_sum(self) -> int:
        return sum(self.degrees)


def _realized_form(g: LieAlgebra, form: InvariantForm | None) -> InvariantForm:
    if g.realization is None or g.family_tag not in ("gl", "sl"):
        raise UnsupportedAlgebraError(
            f"no built-in invariants for {g.name}; supply custom invariants (they are checked for centrality)"
        )
    return form or trace_form(g)


def generic_matrix(g: LieAlgebra, form: InvariantForm | None = None) -> list[list[Poly]]:
    """The matrix of the element of q identified with the generic covector.

    Entry (a, b) is a linear form in the coordinates of S(q).
    """
    form = _realized_form(g, form)
    ginv = form.inverse_gram
    mats = g.realization
    n = len(mats[0])
    ring = g.ring
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            coeffs = [sum(ginv[j][i] * mats[j][a][b] for j in range(g.dim)) for i in range(g.dim)]
            row.append(ring.linear(coeffs))
        out.append(row)
    return out


def trace_power_invariants(g: LieAlgebra, form: InvariantForm | None = None) -> InvariantSet:
    """tr(X^k) for k = 1..n on gl_n and k = 2..n on sl_n."""
    form = _realized_form(g, form)
    X = generic_matrix(g, form)
    n = len(X)
    start = 1 if g.family_tag == "gl" else 2
    gens, degrees = [], []
    power = X
    for k in range(1, n + 1):
        if k > 1:
            power = poly_matrix_mul(power, X)
        if k >= start:
            gens.append(poly_matrix_trace(power))
            degrees.append(k)
    labels = tuple(f"tr X^{k}" for k in degrees)
    return InvariantSet(g, tuple(gens), tuple(degrees), "trace-powers", labels)


def _poly_det(m: Sequence[Sequence[Poly]]) -> Poly:
    n = len(m)
    ring = m[0][0].ring
    total = ring.zero()
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ring.one()
        for i in range(n):
            term = term * m[i][perm[i]]
            if not term:
                break
        if term:
            total = total - term if inversions % 2 else total + term
    return total


def charpoly_invariants(g: LieAlgebra, form: InvariantForm | None = None) -> InvariantSet:
    """Coefficients of the characteristic polynomial, as sums of principal minors."""
    form = _realized_form(g, form)
    X = generic_matrix(g, form)
    n = len(X)
    start = 1 if g.family_tag == "gl" else 2
    gens, degrees = [], []
    for k in range(start, n + 1):
        acc = g.ring.zero()
        for rows in itertools.combinations(range(n), k):
            acc = acc + _poly_det([[X[i][j] for j in rows] for i in rows])
        gens.append(acc)
        degrees.append(k)
    labels = tuple(f"c{k}" for k in degrees)
    return InvariantSet(g, tuple(gens), tuple(degrees), "charpoly", labels)


@dataclass(frozen=True)
class CentralityResult:
    central: bool
    coordinate: int | None = None
    bracket: Poly | None = None

    def __bool__(self) -> bool:
        return self.central


def verify_centrality(H: Poly) -> CentralityResult:
    """{H, x_i} = 0 for every coordinate, checked symbolically."""
    g = H.ring.algebra
    if not isinstance(g, LieAlgebra):
        raise UnsupportedAlgebraError("polynomial is not an element of S(q)")
    for i, x in enumerate(g.ring.gens()):
        br = poisson_bracket(H, x)
        if br:
            return CentralityResult(False, i, br)
    return CentralityResult(True)


def custom_invariants(g: LieAlgebra, polys: Sequence[Poly], labels: Sequence[str] = ()) -> InvariantSet:
    """Accept user-supplied invariants after checking that each one is central."""
    gens = []
    for pos, H in enumerate(polys):
        if H.ring != g.ring:
            raise ValueError(f"invariant #{pos} lives in a different ring")
        res = verify_centrality(H)
        if not res:
            raise NotCentralError(pos, res.coordinate, res.bracket)
        gens.append(H)
    degrees = tuple(H.degree for H in gens)
    return InvariantSet(g, tuple(gens), degrees, "custom", tuple(labels))


def restrict_to_cartan(H: Poly, split: Splitting) -> Poly:
    """The pure-Cartan part of H, i.e. its restriction to t."""
    if split.kind != "cartan":
        raise UnsupportedAlgebraError("restriction needs a Cartan splitting")
    out = H.ring.zero()
    for _i, j, comp in bihomogeneous_components(H, split):
        if j == 0:
            out = out + comp
    return out


@dataclass(frozen=True)
class KostantResult:
    span: SpanReport
    centralizer: SpanReport
    is_regular: bool
    verdict: bool  # differentials span the whole centralizer

    @property
    def mismatch(self) -> bool:
        return self.verdict != self.is_regular


def kostant_span_check(inv: InvariantSet, xi, index: int | None = None) -> KostantResult:
    """Compare the span of d_xi H_j with the centralizer of xi."""
    g = inv.algebra
    span = SpanReport.of([differential_at(H, xi) for H in inv.gens], g.dim)
    cent = centralizer(g, xi)
    regular = is_regular(g, xi, index)
    res = KostantResult(span, cent, regular, span.equals(cent))
    if res.mismatch:
        log.error(
            "regularity criterion violated at %s: span dim %d, centralizer dim %d, regular=%s",
            tuple(str(a) for a in xi), span.rank, cent.rank, regular,
        )
    return res


def differential_commutes_with_centralizer(H: Poly, xi) -> bool:
    """d_xi H lies in the centre of q^xi."""
    g = H.ring.algebra
    d = differential_at(H, xi)
    return all(la.is_zero(g.bracket(d, y)) for y in centralizer(g, xi).basis)
