"""Lie algebras given by structure constants, invariant forms and splittings."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg as la
from .linalg import as_rational
from .poly import PolyRing

log = logging.getLogger(__name__)


class LieAlgebraError(ValueError):
    pass


class InvalidDimensionError(LieAlgebraError):
    pass


class UnsupportedAlgebraError(LieAlgebraError):
    pass


class NotSubalgebraError(LieAlgebraError):
    pass


class DegenerateRestrictionError(LieAlgebraError):
    pass


class NotStableError(LieAlgebraError):
    pass


@dataclass(frozen=True)
class Covector:
    """A point of q*, given by its values on the basis of q."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", la.vec(self.coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: "Covector") -> "Covector":
        return Covector(la.add(self.coords, _coords(other)))

    def __sub__(self, other: "Covector") -> "Covector":
        return Covector(la.sub(self.coords, _coords(other)))

    def __mul__(self, c) -> "Covector":
        return Covector(la.scale(c, self.coords))

    __rmul__ = __mul__

    def __call__(self, x: Sequence):
        """Pairing with an element of q given in basis coordinates."""
        return la.dot(self.coords, x)

    def is_zero(self) -> bool:
        return la.is_zero(self.coords)


def _coords(x) -> tuple:
    if isinstance(x, Covector):
        return x.coords
    return la.vec(x)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    ``table`` maps an ordered pair ``(i, j)`` with ``i < j`` to the sparse
    expansion ``{k: c}`` of ``[b_i, b_j] = sum_k c b_k``.  Zero brackets are
    omitted.
    """

    dim: int
    basis_labels: tuple[str, ...]
    table: Mapping[tuple[int, int], Mapping[int, object]]
    realization: tuple | None = None
    family_tag: str | None = None
    rank_n: int | None = None  # matrix size n for gl_n / sl_n

    def __post_init__(self):
        if self.dim < 1 or len(self.basis_labels) != self.dim:
            raise InvalidDimensionError("basis labels must match a positive dimension")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.basis_labels == other.basis_labels
            and self._canonical_table == other._canonical_table
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.basis_labels, self.family_tag))

    def __repr__(self) -> str:
        name = f"{self.family_tag}_{self.rank_n}" if self.family_tag in ("gl", "sl") else "custom"
        return f"LieAlgebra({name}, dim={self.dim})"

    @cached_property
    def _canonical_table(self):
        return frozenset((ij, frozenset(v.items())) for ij, v in self.table.items() if v)

    @cached_property
    def ring(self) -> PolyRing:
        """S(q): polynomials in the basis elements of q."""
        return PolyRing(self.basis_labels, self)

    @property
    def name(self) -> str:
        if self.family_tag in ("gl", "sl"):
            return f"{self.family_tag}{self.rank_n}"
        return "custom"

    # -- brackets ---------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict[int, object]:
        if i == j:
            return {}
        if i < j:
            return dict(self.table.get((i, j), {}))
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def structure_constant(self, i: int, j: int, k: int):
        return self.bracket_basis(i, j).get(k, 0)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        out = [0] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            for j, b in ys:
                if i == j:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += a * b * c
        return la.vec(out)

    def ad(self, x: Sequence) -> list[list]:
        """Matrix of ad(x) acting on coordinate columns."""
        cols = [self.bracket(x, la.unit(self.dim, j)) for j in range(self.dim)]
        return la.transpose(cols)

    def basis_vector(self, i: int | str) -> tuple:
        if isinstance(i, str):
            i = self.basis_labels.index(i)
        return la.unit(self.dim, i)

    def element(self, coeffs: Mapping[str, object]) -> tuple:
        v = [0] * self.dim
        for label, c in coeffs.items():
            v[self.basis_labels.index(label)] += c
        return la.vec(v)

    # -- realization helpers ---------------------------------------------
    @cached_property
    def _realization_solver(self):
        mats = self.realization
        flat = [[a for row in m for a in row] for m in mats]  # dim x n^2
        cols = la.transpose(flat)  # n^2 x dim
        rows = la.independent_rows(cols)
        if len(rows) < self.dim:
            raise LieAlgebraError("realization matrices are linearly dependent")
        square = [cols[r] for r in rows]
        return rows, la.inverse(square), cols

    def matrix(self, x: Sequence) -> list[list]:
        """The realized matrix of the element with coordinates ``x``."""
        if self.realization is None:
            raise UnsupportedAlgebraError("algebra has no matrix realization")
        n = len(self.realization[0])
        out = [[0] * n for _ in range(n)]
        for c, m in zip(x, self.realization):
            if c:
                for i in range(n):
                    for j in range(n):
                        if m[i][j]:
                            out[i][j] += c * m[i][j]
        return [la.vec(row) for row in out]

    def coords_of_matrix(self, m: Sequence[Sequence]) -> tuple:
        """Coordinates of a matrix lying in the span of the realization."""
        if self.realization is None:
            raise UnsupportedAlgebraError("algebra has no matrix realization")
        rows, inv, cols = self._realization_solver
        flat = [a for row in m for a in row]
        x = la.matvec(inv, [flat[r] for r in rows])
        if la.vec(flat) != la.matvec(cols, x):
            raise LieAlgebraError("matrix is not in the span of the realization")
        return x

    # -- checks -------------------------------------------------------------
    def antisymmetry_defects(self) -> list[tuple[int, int]]:
        # table only stores i < j, so check stored keys are ordered
        return [ij for ij in self.table if ij[0] >= ij[1]]

    def jacobi_defects(self) -> list[tuple[int, int, int]]:
        """Basis triples where the cyclic Jacobi sum is nonzero (exhaustive)."""
        bad = []
        e = [la.unit(self.dim, i) for i in range(self.dim)]
        br = {}
        for i in range(self.dim):
            for j in range(self.dim):
                br[i, j] = self.bracket(e[i], e[j])
        for i, j, k in itertools.combinations(range(self.dim), 3):
            s = la.add(
                la.add(self.bracket(br[i, j], e[k]), self.bracket(br[j, k], e[i])),
                self.bracket(br[k, i], e[j]),
            )
            if not la.is_zero(s):
                bad.append((i, j, k))
        return bad

    def realization_defects(self) -> list[tuple[int, int]]:
        if self.realization is None:
            return []
        bad = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                a, b = self.realization[i], self.realization[j]
                comm = _mat_sub(la.matmul(a, b), la.matmul(b, a))
                expected = self.matrix(la.vec(self.bracket_basis(i, j).get(k, 0) for k in range(self.dim)))
                if [la.vec(r) for r in comm] != expected:
                    bad.append((i, j))
        return bad

    def is_valid(self) -> bool:
        return not (self.antisymmetry_defects() or self.jacobi_defects() or self.realization_defects())


def _mat_sub(a, b):
    return [la.sub(r, s) for r, s in zip(a, b)]


def from_structure_constants(
    labels: Sequence[str],
    constants: Mapping[tuple[int, int, int], object],
    *,
    realization=None,
    family_tag: str | None = "custom",
    check: bool = True,
) -> LieAlgebra:
    """Build an algebra from ``{(i, j, k): c}`` meaning c_ij^k (0-based).

    Antisymmetric partners may be given or omitted; inconsistent pairs are an
    error.
    """
    dim = len(labels)
    table: dict[tuple[int, int], dict[int, object]] = {}
    seen: dict[tuple[int, int, int], object] = {}
    for (i, j, k), c in constants.items():
        c = as_rational(c)
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise LieAlgebraError(f"index out of range in ({i}, {j}, {k})")
        if i == j:
            if c:
                raise LieAlgebraError(f"[b_{i}, b_{i}] must vanish")
            continue
        a, b, sign = (i, j, 1) if i < j else (j, i, -1)
        val = sign * c
        if (a, b, k) in seen and seen[a, b, k] != val:
            raise LieAlgebraError(f"antisymmetry violated for ({i}, {j}, {k})")
        seen[a, b, k] = val
    for (a, b, k), c in seen.items():
        if c:
            table.setdefault((a, b), {})[k] = c
    g = LieAlgebra(dim, tuple(labels), table, realization=realization, family_tag=family_tag)
    if check:
        bad = g.jacobi_defects()
        if bad:
            raise LieAlgebraError(f"Jacobi identity fails on basis triple {bad[0]}")
    return g


def from_matrices(labels: Sequence[str], mats: Sequence[Sequence[Sequence]], *, family_tag="custom", rank_n=None) -> LieAlgebra:
    """Matrix Lie algebra spanned by ``mats``; brackets are commutators."""
    mats = tuple(tuple(la.vec(row) for row in m) for m in mats)
    dim = len(mats)
    proto = LieAlgebra(dim, tuple(labels), {}, realization=mats, family_tag=family_tag, rank_n=rank_n)
    table: dict[tuple[int, int], dict[int, object]] = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            comm = _mat_sub(la.matmul(mats[i], mats[j]), la.matmul(mats[j], mats[i]))
            x = proto.coords_of_matrix(comm)
            entry = {k: c for k, c in enumerate(x) if c}
            if entry:
                table[i, j] = entry
    return LieAlgebra(dim, tuple(labels), table, realization=mats, family_tag=family_tag, rank_n=rank_n)


def _elementary(n: int, i: int, j: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    m[i][j] = 1
    return m


def _label(i: int, j: int, n: int) -> str:
    return f"E{i}{j}" if n < 10 else f"E{i}_{j}"


def build_classical(family: str, n: int) -> LieAlgebra:
    """gl_n or sl_n in the elementary-matrix basis.

    gl_n: E_ij in row-major order.  sl_n: the off-diagonal E_ij in row-major
    order followed by H_i = E_ii - E_{i+1,i+1}, i = 1..n-1.
    """
    if family not in ("gl", "sl"):
        raise UnsupportedAlgebraError(f"unknown family {family!r}; use 'gl' or 'sl'")
    if not isinstance(n, int) or n < 2:
        raise InvalidDimensionError(f"n must be an integer >= 2, got {n!r}")
    labels, mats = [], []
    if family == "gl":
        for i in range(n):
            for j in range(n):
                labels.append(_label(i + 1, j + 1, n))
                mats.append(_elementary(n, i, j))
    else:
        for i in range(n):
            for j in range(n):
                if i != j:
                    labels.append(_label(i + 1, j + 1, n))
                    mats.append(_elementary(n, i, j))
        for i in range(n - 1):
            h = _elementary(n, i, i)
            h[i + 1][i + 1] = -1
            labels.append(f"H{i + 1}")
            mats.append(h)
    return from_matrices(labels, mats, family_tag=family, rank_n=n)


def parse_algebra_name(name: str) -> LieAlgebra:
    """``"gl4"`` / ``"sl_3"`` -> the classical algebra."""
    s = name.strip().lower().replace("_", "")
    if s[:2] in ("gl", "sl") and s[2:].isdigit():
        return build_classical(s[:2], int(s[2:]))
    raise UnsupportedAlgebraError(f"cannot parse algebra name {name!r}")


# -- invariant forms ----------------------------------------------------------


@dataclass(frozen=True)
class InvariantForm:
    gram: tuple
    nondegenerate: bool

    @cached_property
    def inverse_gram(self) -> list[list]:
        if not self.nondegenerate:
            raise DegenerateRestrictionError("form is degenerate")
        return la.inverse(self.gram)

    def pair(self, x: Sequence, y: Sequence):
        return la.dot(x, la.matvec(self.gram, y))

    def flat(self, x: Sequence) -> Covector:
        """Element of q -> covector ``(x, .)``."""
        return Covector(la.matvec(self.gram, x))

    def sharp(self, xi) -> tuple:
        """Covector -> the element x with ``(x, .) = xi``."""
        return la.matvec(self.inverse_gram, _coords(xi))

    def invariance_defects(self, g: LieAlgebra) -> list[tuple[int, int, int]]:
        """Basis triples where ([x,y],z) + (y,[x,z]) is nonzero."""
        bad = []
        e = [la.unit(g.dim, i) for i in range(g.dim)]
        for i, j, k in itertools.product(range(g.dim), repeat=3):
            v = self.pair(g.bracket(e[i], e[j]), e[k]) + self.pair(e[j], g.bracket(e[i], e[k]))
            if v:
                bad.append((i, j, k))
        return bad


def make_form(gram: Sequence[Sequence]) -> InvariantForm:
    gram = tuple(la.vec(r) for r in gram)
    if la.transpose(gram) != [list(r) for r in gram]:
        raise LieAlgebraError("gram matrix is not symmetric")
    return InvariantForm(gram, la.det(gram) != 0)


def trace_form(g: LieAlgebra) -> InvariantForm:
    """(x, y) = tr(xy) in the defining realization."""
    if g.realization is None:
        raise UnsupportedAlgebraError("trace form needs a matrix realization; supply a form explicitly")
    mats = g.realization
    gram = [[la.trace(la.matmul(a, b)) for b in mats] for a in mats]
    return make_form(gram)


def killing_form(g: LieAlgebra) -> InvariantForm:
    """(x, y) = tr(ad x ad y); usable for custom algebras without realization."""
    ads = [g.ad(la.unit(g.dim, i)) for i in range(g.dim)]
    gram = [[la.trace(la.matmul(a, b)) for b in ads] for a in ads]
    return make_form(gram)


def default_form(g: LieAlgebra) -> InvariantForm:
    if g.realization is not None:
        return trace_form(g)
    return killing_form(g)


# -- splittings ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Splitting:
    """An f-stable decomposition q = f + m.

    ``p_f`` and ``p_m`` act on coordinate columns of elements of q.  On
    covectors the projections act by their transposes.
    """

    algebra: LieAlgebra
    f_basis: tuple
    m_basis: tuple
    p_f: tuple
    p_m: tuple
    form: InvariantForm | None = None
    kind: str = "custom"

    @property
    def dim_f(self) -> int:
        return len(self.f_basis)

    @property
    def dim_m(self) -> int:
        return len(self.m_basis)

    def project_f(self, x: Sequence) -> tuple:
        return la.matvec(self.p_f, x)

    def project_m(self, x: Sequence) -> tuple:
        return la.matvec(self.p_m, x)

    def covector_f(self, gamma) -> Covector:
        """gamma_f: equal to gamma on f and zero on m."""
        return Covector(la.matvec(la.transpose(self.p_f), _coords(gamma)))

    def covector_m(self, gamma) -> Covector:
        return Covector(la.matvec(la.transpose(self.p_m), _coords(gamma)))

    def phi_matrix(self, s) -> list[list]:
        """Matrix of phi_s on q: identity on f, s times identity on m."""
        s = as_rational(s)
        return [[as_rational(a + s * b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.p_f, self.p_m)]

    def phi_vector(self, x: Sequence, s) -> tuple:
        return la.add(self.project_f(x), la.scale(s, self.project_m(x)))

    @cached_property
    def adapted_basis(self) -> list[tuple]:
        return list(self.f_basis) + list(self.m_basis)

    @cached_property
    def adapted_inverse(self) -> list[list]:
        """Rows express ambient basis vectors b_i in the f-then-m basis."""
        cols = la.transpose(self.adapted_basis)  # columns are adapted vectors
        return la.transpose(la.inverse(cols))

    def defects(self) -> dict[str, list]:
        """All splitting invariants that fail (empty lists when valid)."""
        g = self.algebra
        n = g.dim
        out: dict[str, list] = {"basis": [], "projections": [], "subalgebra": [], "stability": [], "orthogonal": []}
        if la.rank(self.adapted_basis) != n or len(self.adapted_basis) != n:
            out["basis"].append("f and m do not form a basis")
        ident = la.identity(n)
        summ = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.p_f, self.p_m)]
        if [la.vec(r) for r in summ] != [la.vec(r) for r in ident]:
            out["projections"].append("p_f + p_m != 1")
        if any(not la.is_zero(r) for r in la.matmul(self.p_f, self.p_m)):
            out["projections"].append("p_f p_m != 0")
        for a, x in enumerate(self.f_basis):
            for b, y in enumerate(self.f_basis):
                if not la.is_zero(self.project_m(g.bracket(x, y))):
                    out["subalgebra"].append((a, b))
            for b, v in enumerate(self.m_basis):
                if not la.is_zero(self.project_f(g.bracket(x, v))):
                    out["stability"].append((a, b))
        if self.form is not None:
            for a, x in enumerate(self.f_basis):
                for b, v in enumerate(self.m_basis):
                    if self.form.pair(x, v):
                        out["orthogonal"].append((a, b))
        return {k: v for k, v in out.items() if v}

    def is_z2_grading(self) -> bool:
        """[f,f] in f, [f,m] in m and [m,m] in f."""
        g = self.algebra
        if self.defects():
            return False
        return all(
            la.is_zero(self.project_m(g.bracket(u, v))) for u in self.m_basis for v in self.m_basis
        )


def splitting_from_bases(g: LieAlgebra, f_basis, m_basis, *, form=None, kind="custom", validate=True) -> Splitting:
    f_basis = tuple(la.vec(v) for v in f_basis)
    m_basis = tuple(la.vec(v) for v in m_basis)
    adapted = list(f_basis) + list(m_basis)
    if len(adapted) != g.dim or la.rank(adapted) != g.dim:
        raise LieAlgebraError("f_basis and m_basis together must form a basis of q")
    cols = la.transpose(adapted)
    inv = la.inverse(cols)  # rows give adapted coordinates
    k = len(f_basis)
    cf = [[1 if (i == j and i < k) else 0 for j in range(g.dim)] for i in range(g.dim)]
    cm = [[1 if (i == j and i >= k) else 0 for j in range(g.dim)] for i in range(g.dim)]
    p_f = la.matmul(la.matmul(cols, cf), inv)
    p_m = la.matmul(la.matmul(cols, cm), inv)
    split = Splitting(
        g,
        f_basis,
        m_basis,
        tuple(la.vec(r) for r in p_f),
        tuple(la.vec(r) for r in p_m),
        form,
        kind,
    )
    if validate:
        _raise_on_defects(split)
    return split


def _raise_on_defects(split: Splitting) -> None:
    bad = split.defects()
    if "basis" in bad or "projections" in bad:
        raise LieAlgebraError(f"invalid splitting: {bad}")
    if "subalgebra" in bad:
        raise NotSubalgebraError(f"f is not a subalgebra: [f_a, f_b] leaves f for {bad['subalgebra'][0]}")
    if "stability" in bad:
        raise NotStableError(f"[f, m] is not contained in m for pair {bad['stability'][0]}")
    if "orthogonal" in bad:
        raise LieAlgebraError("m is not orthogonal to f")


def make_splitting(g: LieAlgebra, form: InvariantForm, f_basis, *, kind="custom") -> Splitting:
    """q = f + f^perp for a subalgebra f on which the form is nondegenerate."""
    f_basis = [la.vec(v) for v in f_basis]
    if not f_basis:
        raise LieAlgebraError("f_basis is empty")
    if la.rank(f_basis) != len(f_basis):
        raise LieAlgebraError("f_basis is linearly dependent")
    restricted = [[form.pair(x, y) for y in f_basis] for x in f_basis]
    if la.det(restricted) == 0:
        raise DegenerateRestrictionError("the form is degenerate on f")
    for a, x in enumerate(f_basis):
        for b, y in enumerate(f_basis):
            if not la.in_span(g.bracket(x, y), f_basis):
                raise NotSubalgebraError(f"[f_{a}, f_{b}] is not in f")
    rows = [la.matvec(form.gram, x) for x in f_basis]
    m_basis = la.nullspace(rows)
    return splitting_from_bases(g, f_basis, m_basis, form=form, kind=kind)


def _require_classical(g: LieAlgebra, what: str) -> int:
    if g.family_tag not in ("gl", "sl") or g.rank_n is None:
        raise UnsupportedAlgebraError(f"{what} requires gl_n or sl_n (or explicit user data)")
    return g.rank_n


def diagonal_basis(g: LieAlgebra) -> list[tuple]:
    n = _require_classical(g, "diagonal Cartan")
    if g.family_tag == "gl":
        return [g.basis_vector(_label(i, i, n)) for i in range(1, n + 1)]
    return [g.basis_vector(f"H{i}") for i in range(1, n)]


def off_diagonal_basis(g: LieAlgebra) -> list[tuple]:
    n = _require_classical(g, "root spaces")
    return [g.basis_vector(_label(i, j, n)) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def cartan_splitting(g: LieAlgebra, cartan_basis=None, form: InvariantForm | None = None) -> Splitting:
    """q = t + t^perp with t a split Cartan subalgebra.

    Without ``cartan_basis`` this is the diagonal Cartan of gl_n / sl_n.
    """
    if cartan_basis is None:
        _require_classical(g, "cartan_splitting")
        form = form or trace_form(g)
        split = splitting_from_bases(g, diagonal_basis(g), off_diagonal_basis(g), form=form, kind="cartan")
        return split
    cartan_basis = [la.vec(v) for v in cartan_basis]
    form = form or default_form(g)
    for x, y in itertools.combinations(cartan_basis, 2):
        if not la.is_zero(g.bracket(x, y)):
            raise UnsupportedAlgebraError("supplied Cartan basis is not abelian")
    split = make_splitting(g, form, cartan_basis, kind="cartan")
    root_decomposition(split)  # raises when ad(t) is not split over Q
    return split


def root_decomposition(split: Splitting) -> dict[tuple, list[tuple]]:
    """Simultaneous ad(t)-eigenspaces in m, keyed by eigenvalues on the t basis."""
    g = split.algebra
    if all(_is_simultaneous_eigen(g, split.f_basis, v) is not None for v in split.m_basis):
        out: dict[tuple, list[tuple]] = {}
        for v in split.m_basis:
            out.setdefault(_is_simultaneous_eigen(g, split.f_basis, v), []).append(v)
        return out
    return _eigenspaces_via_sympy(split)


def _is_simultaneous_eigen(g: LieAlgebra, hs, v):
    vals = []
    nz = next(i for i, a in enumerate(v) if a)
    for h in hs:
        w = g.bracket(h, v)
        lam = as_rational(Fraction(w[nz]) / v[nz])
        if la.sub(w, la.scale(lam, v)) != la.zeros(len(v)):
            return None
        vals.append(lam)
    return tuple(vals)


def _eigenspaces_via_sympy(split: Splitting) -> dict[tuple, list[tuple]]:
    import sympy

    g = split.algebra
    # a generic rational combination separates the roots
    weights = [7 ** (i + 1) + i for i in range(split.dim_f)]
    h = la.lincomb(weights, list(split.f_basis))
    ad = sympy.Matrix(g.ad(h))
    out: dict[tuple, list[tuple]] = {}
    for lam, _mult, vecs in ad.eigenvects():
        if not lam.is_rational:
            raise UnsupportedAlgebraError("ad(t) is not diagonalizable over Q")
        for v in vecs:
            if not all(a.is_rational for a in v):
                raise UnsupportedAlgebraError("ad(t) is not diagonalizable over Q")
            w = la.vec(Fraction(int(a.p), int(a.q)) for a in v)
            if la.in_span(w, split.f_basis):
                continue
            key = _is_simultaneous_eigen(g, split.f_basis, w)
            if key is None:
                raise UnsupportedAlgebraError("t does not act diagonally on m over Q")
            out.setdefault(key, []).append(w)
    if sum(len(v) for v in out.values()) != split.dim_m:
        raise UnsupportedAlgebraError("ad(t) is not diagonalizable over Q")
    return out


def centralizer(g: LieAlgebra, xi, form: InvariantForm | None = None):
    """q^xi = {x : xi([x, y]) = 0 for all y}, as an exact SpanReport.

    ``form`` is only used when ``xi`` is passed as an element of q instead of
    a :class:`Covector`.
    """
    from .ranklab import SpanReport

    if not isinstance(xi, Covector):
        if form is None:
            xi = Covector(xi)
        else:
            xi = form.flat(xi)
    mat = hat_matrix(g, xi)
    kernel = la.nullspace(mat) if any(any(r) for r in mat) else [la.unit(g.dim, i) for i in range(g.dim)]
    return SpanReport.of(kernel, g.dim)


def hat_matrix(g: LieAlgebra, xi) -> list[list]:
    """The skew matrix xi([b_i, b_j])."""
    xi = _coords(xi)
    m = [[0] * g.dim for _ in range(g.dim)]
    for (i, j), out in g.table.items():
        v = as_rational(sum(c * xi[k] for k, c in out.items()))
        m[i][j] = v
        m[j][i] = -v
    return m


def principal_triple(g: LieAlgebra) -> tuple[tuple, tuple, tuple]:
    """(e, h, f) with e = sum E_{i,i+1}, h diagonal and [e, f] = h."""
    n = _require_classical(g, "principal_triple")
    e_mat = [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)]
    f_mat = [[(j + 1) * (n - j - 1) if i == j + 1 else 0 for j in range(n)] for i in range(n)]
    h_mat = [[(n - 1 - 2 * i) if i == j else 0 for j in range(n)] for i in range(n)]
    e, h, f = (g.coords_of_matrix(m) for m in (e_mat, h_mat, f_mat))
    if g.bracket(h, e) != la.scale(2, e) or g.bracket(h, f) != la.scale(-2, f) or g.bracket(e, f) != h:
        raise LieAlgebraError("principal triple relations failed")
    return e, h, f


def lower_right_sl2(g: LieAlgebra) -> list[tuple]:
    """(e, h, f) of the sl_2 sitting in the lower-right 2x2 corner."""
    n = _require_classical(g, "lower-right sl_2")
    e = g.coords_of_matrix(_elementary(n, n - 2, n - 1))
    f = g.coords_of_matrix(_elementary(n, n - 1, n - 2))
    hm = _elementary(n, n - 2, n - 2)
    hm[n - 1][n - 1] = -1
    h = g.coords_of_matrix(hm)
    return [e, h, f]


def to_matrix_list(m) -> list[list]:
    return [list(r) for r in m]
