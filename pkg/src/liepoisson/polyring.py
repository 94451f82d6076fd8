"""Operations on S(q) that depend on the Lie algebra or a splitting q = f + m.

Polynomials live in the ambient basis coordinates of q.  Bidegrees are read
off after an exact change of variables to the adapted basis f_basis + m_basis.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg as la
from .algebra import Covector, Splitting, _coords
from .linalg import as_rational
from .poly import Poly, PolyRing


class InvalidParameterError(ValueError):
    pass


class SingularSystemError(ArithmeticError):
    pass


def differential_at(F: Poly, gamma) -> tuple:
    """d_gamma F as an element of q (basis coordinates)."""
    pt = _coords(gamma)
    return tuple(F.diff(i).evaluate(pt) for i in range(F.nvars))


def directional_derivative(F: Poly, gamma) -> Poly:
    return F.directional_derivative(_coords(gamma))


def iterated_directional_derivative(F: Poly, gamma, k: int) -> Poly:
    out = F
    for _ in range(k):
        out = directional_derivative(out, gamma)
    return out


@lru_cache(maxsize=128)
def _adapted_maps(split: Splitting):
    """(adapted ring, images of ambient vars, images of adapted vars)."""
    g = split.algebra
    n = g.dim
    names = tuple(f"f{a}" for a in range(split.dim_f)) + tuple(f"m{a}" for a in range(split.dim_m))
    adapted = PolyRing(names)
    to_adapted = [adapted.linear(row) for row in split.adapted_inverse]
    back = [g.ring.linear(v) for v in split.adapted_basis]
    assert len(to_adapted) == n
    return adapted, to_adapted, back


def to_adapted(F: Poly, split: Splitting) -> Poly:
    """F rewritten in the coordinates of the f-then-m basis."""
    adapted, images, _ = _adapted_maps(split)
    return F.substitute(images, adapted)


def from_adapted(P: Poly, split: Splitting) -> Poly:
    _, _, back = _adapted_maps(split)
    return P.substitute(back, split.algebra.ring)


def bihomogeneous_components(F: Poly, split: Splitting) -> list[tuple[int, int, Poly]]:
    """Nonzero components F_(i,j) of f-degree i and m-degree j.

    Ordered by total degree, then by increasing m-degree.
    """
    P = to_adapted(F, split)
    k = split.dim_f
    nv = P.nvars
    groups: dict[tuple[int, int], dict[int, object]] = {}
    for key, c in P.raw_terms().items():
        b = key.to_bytes(nv, "little") if nv else b""
        i, j = sum(b[:k]), sum(b[k:])
        groups.setdefault((i, j), {})[key] = c
    out = []
    for (i, j) in sorted(groups, key=lambda ij: (ij[0] + ij[1], ij[1])):
        comp = from_adapted(Poly(P.ring, groups[i, j]), split)
        if comp:
            out.append((i, j, comp))
    return out


def bidegree(F: Poly, split: Splitting) -> tuple[int, int] | None:
    """The bidegree of a bihomogeneous F (None for 0 or mixed input)."""
    comps = bihomogeneous_components(F, split)
    if len(comps) != 1:
        return None
    return comps[0][0], comps[0][1]


def phi_images(split: Splitting, s) -> list[Poly]:
    """Images of the basis variables under phi_s (a linear substitution)."""
    ring = split.algebra.ring
    phi = split.phi_matrix(s)
    cols = la.transpose(phi)
    return [ring.linear(col) for col in cols]


def phi_s_poly(F: Poly, split: Splitting, s) -> Poly:
    """phi_s extended to S(q): the m-degree-j part is scaled by s**j."""
    s = as_rational(s)
    if s == 0:
        raise InvalidParameterError("phi_0 is not invertible; s must be nonzero")
    if s == 1:
        return F
    return F.substitute(phi_images(split, s), F.ring)


def phi_symbolic(F: Poly, split: Splitting, var: str = "s") -> Poly:
    """phi_s(F) with s adjoined as a last extra variable."""
    ring = F.ring.extend(var)
    n = F.nvars
    svar = ring.var(n)
    images = []
    for col_f, col_m in zip(la.transpose(split.p_f), la.transpose(split.p_m)):
        images.append(ring.linear(list(col_f) + [0]) + ring.linear(list(col_m) + [0]) * svar)
    return F.substitute(images, ring)


def phi_s_vector(x: Sequence, split: Splitting, s) -> tuple:
    """phi_s on q: fixes f, scales m by s."""
    return split.phi_vector(la.vec(x), as_rational(s))


def phi_s_covector(gamma, split: Splitting, s) -> Covector:
    """gamma_f + s * gamma_m."""
    s = as_rational(s)
    return Covector(la.add(split.covector_f(gamma).coords, la.scale(s, split.covector_m(gamma).coords)))


def recover_components_vandermonde(samples: Sequence[tuple[object, Poly]], d: int) -> list[Poly]:
    """Solve sum_j s^j H_j = phi_s(H) for H_0..H_d from d+1 samples.

    ``samples`` holds pairs ``(s, phi_s(H))``; returns ``[H_0, ..., H_d]`` where
    ``H_j`` is the component of m-degree j.  Extra samples are checked for
    consistency.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if len(samples) < d + 1:
        raise SingularSystemError(f"need at least {d + 1} samples, got {len(samples)}")
    ss = [as_rational(s) for s, _ in samples]
    if any(s == 0 for s in ss):
        raise InvalidParameterError("sample parameters must be nonzero")
    if len(set(ss[: d + 1])) < d + 1:
        raise SingularSystemError("repeated s values make the Vandermonde system singular")
    vander = [[Fraction(s) ** j for j in range(d + 1)] for s in ss[: d + 1]]
    inv = la.inverse(vander)
    polys = [p for _, p in samples]
    ring = polys[0].ring
    comps = []
    for j in range(d + 1):
        acc = ring.zero()
        for t in range(d + 1):
            if inv[j][t]:
                acc = acc + polys[t].scale(inv[j][t])
        comps.append(acc)
    for s, p in zip(ss[d + 1 :], polys[d + 1 :]):
        recon = ring.zero()
        for j, c in enumerate(comps):
            recon = recon + c.scale(Fraction(s) ** j)
        if recon != p:
            raise SingularSystemError(f"sample at s={s} is inconsistent with degree {d}")
    return comps


def evaluate_vector(vec_polys: Sequence[Poly], point: Sequence) -> tuple:
    return tuple(p.evaluate(point) for p in vec_polys)
