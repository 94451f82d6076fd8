"""Subalgebras of S(q) built from central polynomials, and commutativity checks.

Three constructions are provided: the algebra generated by the bihomogeneous
components of the invariants for a splitting (``Z``), its extension by a
Cartan subalgebra (``Ztilde``), and the argument-shift algebra (``MF``).
Commutativity is always decided symbolically; random points are used only
to exhibit a nonzero value of a bracket that is already known to be nonzero.
"""
from __future__ import annotations

import enum
import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la
from .algebra import (
    Covector,
    LieAlgebra,
    LieAlgebraError,
    NotStableError,
    Splitting,
    UnsupportedAlgebraError,
    build_classical,
    make_splitting,
    trace_form,
    _coords,
)
from .invariants import InvariantSet, trace_power_invariants
from .poisson import poisson_bracket
from .poly import MASK, Poly, PolyRing, TermCapExceeded, get_term_cap, term_cap
from .polyring import (
    bihomogeneous_components,
    from_adapted,
    iterated_directional_derivative,
    phi_s_poly,
    recover_components_vandermonde,
    to_adapted,
)
from .ranklab import PreconditionError, differential_span


class Verdict(str, enum.Enum):
    COMMUTATIVE = "COMMUTATIVE"
    NOT_COMMUTATIVE = "NOT_COMMUTATIVE"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class GeneratorTag:
    source: str
    bidegree: tuple | None = None
    order: int | None = None

    @property
    def label(self) -> str:
        if self.bidegree is not None:
            return f"{self.source} {self.bidegree}"
        if self.order is not None:
            return f"D^{self.order} {self.source}"
        return self.source


@dataclass(frozen=True, eq=False)
class GeneratedSubalgebra:
    kind: str  # "Z", "Ztilde" or "MF"
    gens: tuple
    tags: tuple
    context: object  # a Splitting, or the shift Covector for MF
    invariants: InvariantSet

    def __post_init__(self):
        if any(not p for p in self.gens):
            raise ValueError("zero generators are never stored")
        if len(self.gens) != len(self.tags):
            raise ValueError("one tag per generator")

    @property
    def algebra(self) -> LieAlgebra:
        return self.invariants.algebra

    @property
    def count(self) -> int:
        return len(self.gens)

    @property
    def labels(self) -> list[str]:
        return [t.label for t in self.tags]

    def __len__(self) -> int:
        return len(self.gens)


def _linear(g: LieAlgebra, x) -> Poly:
    return g.ring.linear(x)


def f_invariance_defects(gens: Sequence[Poly], split: Splitting) -> list[tuple[int, int]]:
    """(f basis index, generator index) pairs with {x, gen} != 0."""
    g = split.algebra
    bad = []
    for a, x in enumerate(split.f_basis):
        X = _linear(g, x)
        for k, P in enumerate(gens):
            if poisson_bracket(X, P):
                bad.append((a, k))
    return bad


def generate_Z(inv: InvariantSet, split: Splitting, check: bool = True) -> GeneratedSubalgebra:
    """All nonzero bihomogeneous components of the invariants."""
    if split.algebra != inv.algebra:
        raise LieAlgebraError("splitting and invariants belong to different algebras")
    gens, tags = [], []
    for label, H in zip(inv.labels, inv.gens):
        for i, j, comp in bihomogeneous_components(H, split):
            if comp.is_constant():
                continue
            gens.append(comp)
            tags.append(GeneratorTag(label, (i, j)))
    if check:
        bad = f_invariance_defects(gens, split)
        if bad:
            a, k = bad[0]
            raise NotStableError(f"component {tags[k].label} is not invariant under f basis vector {a}")
    return GeneratedSubalgebra("Z", tuple(gens), tuple(tags), split, inv)


def generate_Ztilde(inv: InvariantSet, split: Splitting) -> GeneratedSubalgebra:
    """Z with the pure-Cartan components replaced by a basis of t."""
    if split.kind != "cartan":
        raise UnsupportedAlgebraError("the extension by t needs a Cartan splitting")
    z = generate_Z(inv, split)
    g = inv.algebra
    gens = [_linear(g, x) for x in split.f_basis]
    tags = [GeneratorTag(f"t{a + 1}", (1, 0)) for a in range(split.dim_f)]
    for P, tag in zip(z.gens, z.tags):
        if tag.bidegree[1] == 0:
            continue
        gens.append(P)
        tags.append(tag)
    return GeneratedSubalgebra("Ztilde", tuple(gens), tuple(tags), split, inv)


def generate_MF(inv: InvariantSet, gamma) -> GeneratedSubalgebra:
    """Directional derivatives D_gamma^k H_j for k < deg H_j (nonconstant ones)."""
    gamma = Covector(_coords(gamma))
    gens, tags = [], []
    for label, H, d in zip(inv.labels, inv.gens, inv.degrees):
        D = H
        for k in range(d):
            if k:
                D = D.directional_derivative(gamma.coords)
            if D.is_constant():
                break
            gens.append(D)
            tags.append(GeneratorTag(label, None, k))
    return GeneratedSubalgebra("MF", tuple(gens), tuple(tags), gamma, inv)


def near_pure_components(inv: InvariantSet, split: Splitting) -> list[tuple[str, Poly]]:
    """Nonzero (d-1, 1) components; empty for a Cartan splitting."""
    out = []
    for label, H, d in zip(inv.labels, inv.gens, inv.degrees):
        for i, j, comp in bihomogeneous_components(H, split):
            if (i, j) == (d - 1, 1):
                out.append((label, comp))
    return out


def vandermonde_consistency(inv: InvariantSet, split: Splitting) -> bool:
    """Components recovered from phi_s(H), s = 1..d+1, match the direct expansion."""
    for H, d in zip(inv.gens, inv.degrees):
        samples = [(s, phi_s_poly(H, split, s)) for s in range(1, d + 2)]
        recovered = recover_components_vandermonde(samples, d)
        direct = {j: comp for _i, j, comp in bihomogeneous_components(H, split)}
        for j, comp in enumerate(recovered):
            if comp != direct.get(j, H.ring.zero()):
                return False
    return True


# -- witnesses -----------------------------------------------------------------


def find_witness(
    P: Poly,
    seed=0,
    bound: int = 3,
    tries: int = 64,
    nonzero_slots: Iterable[int] = (),
    preferred: Iterable[Sequence] = (),
) -> tuple | None:
    """A rational point where P does not vanish, or None when P is zero.

    Preferred points are tried first; then seeded integer points from
    [-bound, bound], widening the box until one is found.
    """
    if not P:
        return None
    n = P.nvars
    slots = set(nonzero_slots)
    for pt in preferred:
        pt = la.vec(pt)
        if all(pt[i] for i in slots) and P.evaluate(pt):
            return pt
    rng = random.Random(f"{seed}")
    b = max(1, bound)
    while True:
        for _ in range(tries):
            pt = []
            for i in range(n):
                v = rng.randint(-b, b)
                while i in slots and v == 0:
                    v = rng.randint(-b, b)
                pt.append(v)
            if P.evaluate(pt):
                return tuple(pt)
        b *= 2


def _point_text(pt) -> list[str] | None:
    return None if pt is None else [str(a) for a in pt]


# -- pairwise brackets ------------------------------------------------------------


@dataclass
class PairResult:
    pair: tuple
    verdict: Verdict
    witness_point: tuple | None = None
    bracket_term_count: int | None = None
    elapsed: float | None = None
    bracket: Poly | None = field(default=None, repr=False)

    def to_dict(self, timings: bool = True) -> dict:
        return {
            "pair": list(self.pair),
            "verdict": self.verdict.value,
            "witness_point": _point_text(self.witness_point),
            "bracket_term_count": self.bracket_term_count,
            "elapsed": round(self.elapsed, 6) if timings and self.elapsed is not None else None,
        }


@dataclass
class CommutativityReport:
    verdict: Verdict
    pairs: list
    labels: list
    checked: int
    total: int

    @property
    def witness(self) -> PairResult | None:
        return next((p for p in self.pairs if p.verdict is Verdict.NOT_COMMUTATIVE), None)

    @property
    def undecided(self) -> list[tuple]:
        return [p.pair for p in self.pairs if p.verdict is Verdict.UNDECIDED]

    def to_dict(self, timings: bool = True) -> dict:
        w = self.witness
        return {
            "verdict": self.verdict.value,
            "pairs_checked": self.checked,
            "pairs_total": self.total,
            "witness_pair": list(w.pair) if w else None,
            "undecided_pairs": [list(p) for p in self.undecided],
            "pairs": [p.to_dict(timings) for p in self.pairs],
        }


def _aggregate(results: list[PairResult]) -> Verdict:
    if any(r.verdict is Verdict.NOT_COMMUTATIVE for r in results):
        return Verdict.NOT_COMMUTATIVE
    if any(r.verdict is Verdict.UNDECIDED for r in results):
        return Verdict.UNDECIDED
    return Verdict.COMMUTATIVE


def _check_pair(gens, i, j, seed, bound) -> PairResult:
    start = time.perf_counter()
    try:
        br = poisson_bracket(gens[i], gens[j])
    except TermCapExceeded:
        return PairResult((i, j), Verdict.UNDECIDED, elapsed=time.perf_counter() - start)
    if not br:
        return PairResult((i, j), Verdict.COMMUTATIVE, None, 0, time.perf_counter() - start)
    pt = find_witness(br, seed=f"{seed}:{i}:{j}", bound=bound)
    return PairResult((i, j), Verdict.NOT_COMMUTATIVE, pt, len(br), time.perf_counter() - start, br)


def _check_chunk(args) -> list[PairResult]:
    gens, pairs, cap, seed, bound = args
    with term_cap(cap):
        out = [_check_pair(gens, i, j, seed, bound) for i, j in pairs]
    for r in out:
        r.bracket = None  # keep the transfer small; recomputed on demand
    return out


def pairwise_bracket_report(
    sub: GeneratedSubalgebra | Sequence[Poly],
    jobs: int = 1,
    seed=0,
    bound: int = 3,
    stop_at_first: bool = False,
) -> CommutativityReport:
    """{g_i, g_j} for all i < j, decided symbolically."""
    gens = list(sub.gens) if isinstance(sub, GeneratedSubalgebra) else list(sub)
    labels = sub.labels if isinstance(sub, GeneratedSubalgebra) else [f"g{i}" for i in range(len(gens))]
    pairs = list(itertools.combinations(range(len(gens)), 2))
    results: list[PairResult] = []
    if jobs > 1 and len(pairs) > 1 and not stop_at_first:
        size = math.ceil(len(pairs) / (4 * jobs))
        chunks = [pairs[k : k + size] for k in range(0, len(pairs), size)]
        cap = get_term_cap()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_check_chunk, [(gens, c, cap, seed, bound) for c in chunks]):
                results.extend(part)
        results.sort(key=lambda r: r.pair)
        for r in results:
            if r.verdict is Verdict.NOT_COMMUTATIVE:
                r.bracket = poisson_bracket(gens[r.pair[0]], gens[r.pair[1]])
    else:
        for i, j in pairs:
            r = _check_pair(gens, i, j, seed, bound)
            results.append(r)
            if stop_at_first and r.verdict is Verdict.NOT_COMMUTATIVE:
                break
    return CommutativityReport(_aggregate(results), results, labels, len(results), len(pairs))


# -- the criterion polynomial ----------------------------------------------------------


def criterion_ring(g: LieAlgebra) -> PolyRing:
    """Coordinates of gamma followed by the two deformation parameters."""
    return PolyRing(tuple(f"gamma{i + 1}" for i in range(g.dim)) + ("s", "s'"))


class _CriterionData:
    def __init__(self, split: Splitting):
        g = split.algebra
        self.split = split
        self.ring = R = criterion_ring(g)
        n = g.dim
        pad = [0, 0]
        pfT = la.transpose(split.p_f)
        pmT = la.transpose(split.p_m)
        self.gamma_f = [R.linear(list(row) + pad) for row in pfT]
        gamma_m = [R.linear(list(row) + pad) for row in pmT]
        s, s2 = R.var(n), R.var(n + 1)
        self.phi = {
            "s": [a + b * s for a, b in zip(self.gamma_f, gamma_m)],
            "s'": [a + b * s2 for a, b in zip(self.gamma_f, gamma_m)],
        }
        self._cache: dict = {}

    def projected_differential(self, H: Poly, which: str) -> list[Poly]:
        """(d_{phi_s gamma} H)_f as a vector of polynomials."""
        key = (id(H), which)
        if key not in self._cache:
            images = self.phi[which]
            grad = [d.substitute(images, self.ring) for d in H.gradient()]
            pf = self.split.p_f
            out = []
            for row in pf:
                acc = self.ring.zero()
                for c, v in zip(row, grad):
                    if c and v:
                        acc = acc + v.scale(c)
                out.append(acc)
            self._cache[key] = (H, out)
        return self._cache[key][1]

    def bracket_paired(self, u: list[Poly], v: list[Poly]) -> Poly:
        """gamma_f([u, v]) for vectors of polynomials u, v."""
        g = self.split.algebra
        w: dict[int, Poly] = {}
        for (i, j), out in g.table.items():
            if not ((u[i] and v[j]) or (u[j] and v[i])):
                continue
            term = u[i] * v[j] - u[j] * v[i]
            if not term:
                continue
            for k, c in out.items():
                w[k] = w.get(k, self.ring.zero()) + term.scale(c)
        total = self.ring.zero()
        for k, P in w.items():
            if P and self.gamma_f[k]:
                total = total + self.gamma_f[k] * P
        return total


_CRITERION_DATA: dict[int, tuple] = {}


def _criterion_data(split: Splitting) -> _CriterionData:
    hit = _CRITERION_DATA.get(id(split))
    if hit is None or hit[0] is not split:
        hit = (split, _CriterionData(split))
        _CRITERION_DATA[id(split)] = hit
    return hit[1]


def criterion_polynomial(inv: InvariantSet, split: Splitting, a: int, b: int) -> Poly:
    """C(gamma, s, s') = gamma_f([(d_{phi_s gamma} H_a)_f, (d_{phi_s' gamma} H_b)_f])."""
    data = _criterion_data(split)
    u = data.projected_differential(inv.gens[a], "s")
    v = data.projected_differential(inv.gens[b], "s'")
    return data.bracket_paired(u, v)


@dataclass
class CriterionReport:
    verdict: Verdict
    pairs: list  # PairResult per invariant pair (a <= b)
    witness: PairResult | None

    def to_dict(self, timings: bool = True) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness_pair": list(self.witness.pair) if self.witness else None,
            "witness_point": _point_text(self.witness.witness_point) if self.witness else None,
            "pairs": [p.to_dict(timings) for p in self.pairs],
        }


def criterion_verdict(
    inv: InvariantSet,
    split: Splitting,
    preferred_points: Iterable[Sequence] = (),
    seed=0,
    bound: int = 3,
) -> CriterionReport:
    """Evaluate the criterion for every pair of invariants (a <= b).

    Pairs with a = b matter: phi_s(H) and phi_s'(H) both lie in Z.
    """
    preferred = [tuple(p) for p in preferred_points]
    n = inv.algebra.dim
    results = []
    for a, b in itertools.combinations_with_replacement(range(len(inv.gens)), 2):
        start = time.perf_counter()
        try:
            C = criterion_polynomial(inv, split, a, b)
        except TermCapExceeded:
            results.append(PairResult((a, b), Verdict.UNDECIDED, elapsed=time.perf_counter() - start))
            continue
        if not C:
            results.append(PairResult((a, b), Verdict.COMMUTATIVE, None, 0, time.perf_counter() - start))
            continue
        pt = find_witness(C, seed=f"{seed}:{a}:{b}", bound=bound, nonzero_slots=(n, n + 1), preferred=preferred)
        results.append(PairResult((a, b), Verdict.NOT_COMMUTATIVE, pt, len(C), time.perf_counter() - start, C))
    verdict = _aggregate(results)
    witness = next((r for r in results if r.verdict is Verdict.NOT_COMMUTATIVE), None)
    return CriterionReport(verdict, results, witness)


# -- argument shift along a one-dimensional f ----------------------------------------


@dataclass(frozen=True)
class MFIdentityResult:
    identity_holds: bool
    failures: tuple  # (invariant index, k) where the identity fails
    inclusion_points: tuple
    inclusion_holds: bool

    def __bool__(self) -> bool:
        return self.identity_holds and self.inclusion_holds


def _power_split(H: Poly, split: Splitting) -> dict[int, Poly]:
    """H = sum_r h^r Q_r with Q_r a polynomial in the m coordinates; returns {r: Q_r}."""
    P = to_adapted(H, split)
    out: dict[int, dict] = {}
    for key, c in P.raw_terms().items():
        r = key & MASK
        out.setdefault(r, {})[key - r] = c
    return {r: from_adapted(Poly(P.ring, t), split) for r, t in out.items()}


def mf_identity_check(
    inv: InvariantSet,
    split: Splitting,
    points: int = 5,
    seed=0,
    bound: int = 10,
) -> MFIdentityResult:
    """Check D_gamma^k H = sum_r r!/(r-k)! h^(r-k) Q_r for f = <h>.

    gamma is the covector (h, .)/(h, h), so gamma(h) = 1 and gamma(m) = 0.
    Also checks that the differentials of Z lie in those of MF_gamma at
    seeded sample points.
    """
    if split.dim_f != 1:
        raise PreconditionError("f must be one-dimensional")
    g = inv.algebra
    form = split.form or trace_form(g)
    h = split.f_basis[0]
    hh = form.pair(h, h)
    if hh == 0:
        raise PreconditionError("h is isotropic")
    gamma = form.flat(la.scale(Fraction(1) / hh, h))
    hpoly = _linear(g, h)
    failures = []
    for idx, (H, d) in enumerate(zip(inv.gens, inv.degrees)):
        parts = _power_split(H, split)
        for k in range(d + 1):
            lhs = iterated_directional_derivative(H, gamma, k)
            rhs = g.ring.zero()
            for r, Q in parts.items():
                if r >= k:
                    rhs = rhs + (hpoly ** (r - k) * Q).scale(math.perm(r, k))
            if lhs != rhs:
                failures.append((idx, k))
    z = generate_Z(inv, split)
    mf = generate_MF(inv, gamma)
    rng = random.Random(seed)
    pts = []
    ok = True
    for _ in range(points):
        pt = tuple(rng.randint(-bound, bound) for _ in range(g.dim))
        pts.append(pt)
        if not differential_span(mf, pt).contains(differential_span(z, pt)):
            ok = False
    return MFIdentityResult(not failures, tuple(failures), tuple(pts), ok)


# -- gl_n versus sl_n -------------------------------------------------------------------


@dataclass
class TransferReport:
    gl_verdict: Verdict
    sl_verdict: Verdict
    gl_from_sl: bool  # every gl generator is a binomial combination of sl components and c
    sl_from_gl: bool  # and conversely
    trace_central: bool

    @property
    def agree(self) -> bool:
        return self.gl_verdict == self.sl_verdict

    def __bool__(self) -> bool:
        return self.agree and self.gl_from_sl and self.sl_from_gl and self.trace_central


def _sl_of(g: LieAlgebra) -> tuple[LieAlgebra, list[Poly]]:
    """sl_n and the images of its basis elements in S(gl_n)."""
    n = g.rank_n
    sl = build_classical("sl", n)
    images = [g.ring.linear(g.coords_of_matrix(sl.matrix(la.unit(sl.dim, i)))) for i in range(sl.dim)]
    return sl, images


def _components_by_bidegree(H: Poly, split: Splitting) -> dict[tuple[int, int], Poly]:
    return {(i, j): c for i, j, c in bihomogeneous_components(H, split)}


def gl_sl_transfer(glZ: GeneratedSubalgebra) -> TransferReport:
    """Compare Z for gl_n and a subalgebra f of sl_n with Z for sl_n.

    With c = tr X and Y = X - (c/n) I, tr X^k = sum_a C(k, a) (c/n)^(k-a) tr Y^a,
    and c has bidegree (0, 1).  Both directions of the binomial transfer are
    checked component by component, and the two commutativity verdicts are
    compared.
    """
    split = glZ.context
    g = split.algebra
    if g.family_tag != "gl":
        raise UnsupportedAlgebraError("expected a subalgebra of S(gl_n)")
    n = g.rank_n
    sl, images = _sl_of(g)
    form_gl = split.form or trace_form(g)
    f_sl = [sl.coords_of_matrix(g.matrix(x)) for x in split.f_basis]
    for x in split.f_basis:
        if la.trace(g.matrix(x)) != 0:
            raise PreconditionError("f must lie in the sl_n block")
    split_sl = make_splitting(sl, trace_form(sl), f_sl, kind=split.kind)
    inv_gl = trace_power_invariants(g, form_gl)
    inv_sl = trace_power_invariants(sl)
    c = inv_gl.gens[0]  # tr X
    cn = c.scale(Fraction(1, n))
    trace_central = all(not poisson_bracket(c, x) for x in g.ring.gens())

    # components of tr Y^a pulled back to S(gl_n); tr Y^0 = n, tr Y^1 = 0
    sl_comps: dict[int, dict[tuple[int, int], Poly]] = {0: {(0, 0): g.ring.const(n)}, 1: {}}
    for a, Y in zip(inv_sl.degrees, inv_sl.gens):
        sl_comps[a] = {ij: P.substitute(images, g.ring) for ij, P in _components_by_bidegree(Y, split_sl).items()}
    gl_comps = {k: _components_by_bidegree(X, split) for k, X in zip(inv_gl.degrees, inv_gl.gens)}
    gl_comps[0] = {(0, 0): g.ring.const(n)}

    def transfer(source, k, coeff_c, i, j):
        acc = g.ring.zero()
        for a in range(k + 1):
            P = source[a].get((i, j - (k - a)))
            if P is not None:
                acc = acc + (coeff_c ** (k - a) * P).scale(math.comb(k, a))
        return acc

    gl_from_sl = all(
        P == transfer(sl_comps, k, cn, i, j)
        for k in inv_gl.degrees
        for (i, j), P in gl_comps[k].items()
    )
    sl_from_gl = all(
        P == transfer(gl_comps, k, -cn, i, j)
        for k in inv_sl.degrees
        for (i, j), P in sl_comps[k].items()
    )
    gl_v = criterion_verdict(inv_gl, split).verdict
    sl_v = criterion_verdict(inv_sl, split_sl).verdict
    return TransferReport(gl_v, sl_v, gl_from_sl, sl_from_gl, trace_central)
