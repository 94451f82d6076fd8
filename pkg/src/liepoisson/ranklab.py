"""Exact rank certificates: index, regularity, differential spans, completeness.

Every rank here is computed by exact elimination, so a sampled point that
reaches a given rank is a proof of the corresponding lower bound.  Reports
carry the points they used so the numbers can be re-verified elsewhere.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg as la
from .algebra import (
    InvariantForm,
    LieAlgebra,
    LieAlgebraError,
    UnsupportedAlgebraError,
    _coords,
    centralizer,
    default_form,
    hat_matrix,
)
from .poly import Poly

DEFAULT_BOUND = 10
DEFAULT_TRIALS = 5


class PreconditionError(LieAlgebraError):
    pass


class RankParityError(RuntimeError):
    """dim + index came out odd, which can only mean a wrong index."""


@dataclass(frozen=True)
class SpanReport:
    """A subspace of q given by spanning vectors, with its exact dimension."""

    vectors: tuple
    rank: int
    basis_selection: tuple
    ambient_dim: int

    @classmethod
    def of(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "SpanReport":
        vecs = tuple(la.vec(v) for v in vectors)
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in a space of dimension {ambient_dim}")
        sel = tuple(la.independent_rows(list(vecs))) if vecs else ()
        return cls(vecs, len(sel), sel, ambient_dim)

    @property
    def dim(self) -> int:
        return self.rank

    @property
    def basis(self) -> list[tuple]:
        return [self.vectors[i] for i in self.basis_selection]

    def contains(self, other: "SpanReport | Sequence") -> bool:
        if isinstance(other, SpanReport):
            return la.subspace_contains(self.basis, other.basis)
        return la.in_span(la.vec(other), self.basis)

    def equals(self, other: "SpanReport") -> bool:
        return self.rank == other.rank and self.contains(other)

    def __add__(self, other: "SpanReport") -> "SpanReport":
        return SpanReport.of(self.basis + other.basis, self.ambient_dim)

    def to_dict(self) -> dict:
        return {"dim": self.rank, "basis": [[str(a) for a in v] for v in self.basis]}


def _rng(seed) -> random.Random:
    return random.Random(seed)


def random_point(rng: random.Random, dim: int, bound: int = DEFAULT_BOUND) -> tuple:
    return tuple(rng.randint(-bound, bound) for _ in range(dim))


def index_of(g: LieAlgebra, trials: int = DEFAULT_TRIALS, seed=0, bound: int = DEFAULT_BOUND) -> int:
    """dim q minus the largest rank of xi([ , ]) over sampled covectors xi.

    The sampled rank is a lower bound for the generic rank, so the result is
    an upper bound for the index that is sharp unless every sample lands on
    the singular set.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = _rng(seed)
    best = 0
    for _ in range(trials):
        xi = random_point(rng, g.dim, bound)
        best = max(best, la.rank(hat_matrix(g, xi)))
        if best == g.dim:
            break
    return g.dim - best


@lru_cache(maxsize=64)
def _cached_index(g: LieAlgebra) -> int:
    return index_of(g)


def is_regular(g: LieAlgebra, xi, index: int | None = None) -> bool:
    """dim q^xi equals the index of q."""
    ind = _cached_index(g) if index is None else index
    return centralizer(g, xi).rank == ind


def b_of(g: LieAlgebra, index: int | None = None) -> int:
    """(dim q + ind q) / 2."""
    ind = _cached_index(g) if index is None else index
    total = g.dim + ind
    if total % 2:
        raise RankParityError(f"dim {g.dim} + index {ind} is odd")
    return total // 2


def _gens(sub) -> list[Poly]:
    return list(sub.gens) if hasattr(sub, "gens") else list(sub)


def _algebra(sub, polys: list[Poly]) -> LieAlgebra:
    g = getattr(sub, "algebra", None)
    if g is None and polys:
        g = polys[0].ring.algebra
    if not isinstance(g, LieAlgebra):
        raise UnsupportedAlgebraError("cannot determine the ambient Lie algebra")
    return g


class _Jacobian:
    """Precomputed partial derivatives, evaluated at many points."""

    def __init__(self, polys: Sequence[Poly]):
        self.partials = [p.gradient() for p in polys]

    def rows(self, point: Sequence) -> list[tuple]:
        pt = _coords(point)
        return [tuple(d.evaluate(pt) for d in grad) for grad in self.partials]


def differential_span(sub, gamma) -> SpanReport:
    """d_gamma A: the span of the differentials of the generators at gamma."""
    polys = _gens(sub)
    g = _algebra(sub, polys)
    return SpanReport.of(_Jacobian(polys).rows(gamma), g.dim)


@dataclass(frozen=True)
class JacobianRank:
    rank: int
    point: tuple
    generator_count: int
    points_tried: int = field(default=1)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "generators": self.generator_count,
            "point": [str(a) for a in self.point],
            "points_tried": self.points_tried,
        }


def jacobian_rank(sub, trials: int = DEFAULT_TRIALS, seed=0, bound: int = DEFAULT_BOUND) -> JacobianRank:
    """Largest exact Jacobian rank of the generators over seeded integer points."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    polys = _gens(sub)
    g = _algebra(sub, polys)
    jac = _Jacobian(polys)
    rng = _rng(seed)
    best = JacobianRank(-1, (), len(polys))
    target = min(len(polys), g.dim)
    for t in range(trials):
        pt = random_point(rng, g.dim, bound)
        r = la.rank(jac.rows(pt)) if polys else 0
        if r > best.rank:
            best = JacobianRank(r, pt, len(polys), t + 1)
        if r == target:
            break
    return JacobianRank(best.rank, best.point, len(polys), t + 1)


def trdeg_lower_bound(sub, trials: int = DEFAULT_TRIALS, seed=0, bound: int = DEFAULT_BOUND) -> int:
    """A certified lower bound for the transcendence degree of alg<gens>."""
    return jacobian_rank(sub, trials, seed, bound).rank


def completeness_certificate(sub, gamma, index: int | None = None) -> bool:
    """Sufficient condition for completeness on the orbit of a regular gamma.

    True when dim d_gamma A = b(q).  False means "not certified".
    """
    polys = _gens(sub)
    g = _algebra(sub, polys)
    if not is_regular(g, gamma, index):
        raise PreconditionError("gamma is not regular")
    return differential_span(sub, gamma).rank == b_of(g, index)


# -- spans of argument-shift subalgebras ---------------------------------------


def _mf_span(inv_gens: Sequence[Poly], direction, point) -> SpanReport:
    """d_point of all d_direction^k H, k below deg H."""
    from .polyring import iterated_directional_derivative

    polys = []
    for H in inv_gens:
        for k in range(max(H.degree, 0)):
            D = iterated_directional_derivative(H, direction, k)
            if not D.is_constant():
                polys.append(D)
    g = inv_gens[0].ring.algebra
    return SpanReport.of(_Jacobian(polys).rows(point), g.dim)


@dataclass(frozen=True)
class RelMFResult:
    status: str  # "pass", "fail" or "inconclusive"
    h_regular: bool
    dims: dict
    regular_parameter: object = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __bool__(self) -> bool:
        return self.passed


def relMF_span_check(
    ztilde,
    h: Sequence,
    x: Sequence,
    inv,
    form: InvariantForm | None = None,
    s_range: Iterable = range(1, 11),
) -> RelMFResult:
    """Compare d_{h+x} of the extended algebra with the shift-algebra spans.

    ``h`` lies in the Cartan part and ``x`` in its complement, both given as
    elements of q.  Always tested: d_{h+x} = t + d_h(MF_x).  For regular h
    also d_{h+x} = d_h(MF_x) = d_x(MF_h).  The line h + kx must meet the
    regular set; if no sampled s gives a regular h + s x the result is
    inconclusive.
    """
    split = ztilde.context
    g = split.algebra
    form = form or split.form or default_form(g)
    h, x = la.vec(h), la.vec(x)
    if not la.is_zero(split.project_m(h)) or not la.is_zero(split.project_f(x)):
        raise PreconditionError("h must lie in f and x in m")
    hc, xc = form.flat(h), form.flat(x)
    witness = next((s for s in s_range if is_regular(g, form.flat(la.add(h, la.scale(s, x))))), None)
    h_reg = is_regular(g, hc)
    if witness is None:
        return RelMFResult("inconclusive", h_reg, {})
    gens = list(inv.gens)
    lhs = differential_span(ztilde, hc + xc)
    mf_x = _mf_span(gens, xc, hc)
    t_span = SpanReport.of(split.f_basis, g.dim)
    rhs = t_span + mf_x
    dims = {"d_(h+x) Ztilde": lhs.rank, "t + d_h(MF_x)": rhs.rank, "d_h(MF_x)": mf_x.rank}
    ok = lhs.equals(rhs)
    if h_reg:
        mf_h = _mf_span(gens, hc, xc)
        dims["d_x(MF_h)"] = mf_h.rank
        ok = ok and lhs.equals(mf_x) and mf_x.equals(mf_h)
    return RelMFResult("pass" if ok else "fail", h_reg, dims, witness)


# -- subregular walls in sl_n ---------------------------------------------------


def _sl_diag(g: LieAlgebra, entries: Sequence) -> tuple:
    n = g.rank_n
    return g.coords_of_matrix([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def _diag_entries(g: LieAlgebra, x: Sequence) -> list:
    m = g.matrix(x)
    return [m[i][i] for i in range(len(m))]


def generic_wall_point(g: LieAlgebra, nu: int) -> tuple:
    """A diagonal h' killed by the simple root alpha_nu (1-based) and no other root."""
    n = g.rank_n
    d = [3**k for k in range(n)]
    d[nu] = d[nu - 1]
    total = sum(d)
    d = [n * a - total for a in d]
    return _sl_diag(g, d)


def is_generic_wall_point(g: LieAlgebra, nu: int, h_prime: Sequence) -> bool:
    """alpha_nu(h') = 0 and beta(h') != 0 for every root beta other than +-alpha_nu."""
    m = g.matrix(h_prime)
    n = len(m)
    if any(m[i][j] for i in range(n) for j in range(n) if i != j):
        return False
    d = [m[i][i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            killed = d[i] == d[j]
            if (i, j) == (nu - 1, nu):
                if not killed:
                    return False
            elif killed:
                return False
    return True


def _root_value(g: LieAlgebra, nu: int, x: Sequence):
    d = _diag_entries(g, x)
    return d[nu - 1] - d[nu]


def _wall_target(g: LieAlgebra, nu: int) -> SpanReport:
    """H_nu + strictly lower triangular matrices."""
    n = g.rank_n
    vecs = []
    for i in range(n):
        for j in range(i):
            m = [[0] * n for _ in range(n)]
            m[i][j] = 1
            vecs.append(g.coords_of_matrix(m))
    # H_nu inside the Cartan: kernel of the root on the basis diag(e_k - e_{k+1})
    cartan = []
    for k in range(n - 1):
        d = [0] * n
        d[k], d[k + 1] = 1, -1
        cartan.append(_sl_diag(g, d))
    values = [[_root_value(g, nu, t) for t in cartan]]
    for coeffs in la.nullspace(values):
        vecs.append(la.lincomb(coeffs, cartan))
    return SpanReport.of(vecs, g.dim)


def subregular_containment_check(
    g: LieAlgebra,
    nu: int,
    s_samples: Sequence = (1, 2, 3),
    h_prime: Sequence | None = None,
    form: InvariantForm | None = None,
) -> bool:
    """q^{h' + s f} is inside H_nu + (strictly lower triangular) for each s.

    ``nu`` is the 1-based index of a simple root, f = sum E_{i+1,i}.
    """
    if g.family_tag != "sl" or g.rank_n is None:
        raise UnsupportedAlgebraError("the wall containment check is implemented for sl_n")
    n = g.rank_n
    if n < 3:
        raise PreconditionError("sl_2 has no generic point on a root wall other than 0")
    if not 1 <= nu <= n - 1:
        raise PreconditionError(f"simple root index must be in 1..{n - 1}")
    h_prime = generic_wall_point(g, nu) if h_prime is None else la.vec(h_prime)
    if not is_generic_wall_point(g, nu, h_prime):
        raise PreconditionError("h' is not a generic point of the wall")
    form = form or default_form(g)
    f = g.coords_of_matrix([[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)])
    target = _wall_target(g, nu)
    for s in s_samples:
        if s == 0:
            raise PreconditionError("s must be nonzero")
        cent = centralizer(g, form.flat(la.add(h_prime, la.scale(s, f))))
        if not target.contains(cent):
            return False
    return True
