"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is packed into a single Python int, eight bits per variable
(variable ``i`` occupies bits ``8i .. 8i+7``).  Multiplying monomials is then
integer addition, which keeps the inner loops of products and Poisson
brackets cheap.  Individual exponents are limited to 255; products whose
total degree could overflow that are refused.

Coefficients are ``int`` where integral and ``Fraction`` otherwise.
"""
from __future__ import annotations

import contextlib
import contextvars
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import as_rational

BITS = 8
MASK = (1 << BITS) - 1
MAX_EXPONENT = MASK

DEFAULT_TERM_CAP = 10**6
_term_cap: contextvars.ContextVar[int] = contextvars.ContextVar("term_cap", default=DEFAULT_TERM_CAP)


class TermCapExceeded(RuntimeError):
    """A polynomial operation would produce more terms than the active cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"polynomial has {count} terms, exceeding the cap of {cap}")
        self.count = count
        self.cap = cap


class RingMismatchError(ValueError):
    pass


def get_term_cap() -> int:
    return _term_cap.get()


@contextlib.contextmanager
def term_cap(cap: int):
    """Temporarily change the maximum number of terms a result may have."""
    token = _term_cap.set(int(cap))
    try:
        yield cap
    finally:
        _term_cap.reset(token)


def _check_cap(n: int) -> None:
    cap = _term_cap.get()
    if n > cap:
        raise TermCapExceeded(n, cap)


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring over Q in named variables.

    ``algebra`` is the Lie algebra whose basis the variables are, when the
    ring is S(q); it takes part in equality so that brackets between
    polynomials of different algebras are refused.
    """

    names: tuple[str, ...]
    algebra: object = field(default=None, repr=False)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def var(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.index(i)
        return Poly(self, {1 << (BITS * i): 1})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def const(self, c) -> "Poly":
        c = as_rational(c)
        return Poly(self, {0: c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: 1})

    def linear(self, coeffs: Sequence, constant=0) -> "Poly":
        """The polynomial ``constant + sum(coeffs[i] * x_i)``."""
        terms = {}
        for i, c in enumerate(coeffs):
            c = as_rational(c)
            if c:
                terms[1 << (BITS * i)] = c
        constant = as_rational(constant)
        if constant:
            terms[0] = constant
        return Poly(self, terms)

    def from_terms(self, terms: Mapping[tuple[int, ...], object] | Iterable) -> "Poly":
        """Build from ``{exponent tuple: coefficient}`` or an iterable of pairs."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[int, object] = {}
        for exps, c in items:
            key = pack(exps, self.nvars)
            out[key] = out.get(key, 0) + as_rational(c)
        return Poly(self, {k: as_rational(c) for k, c in out.items() if c != 0})

    def extend(self, *names: str) -> "PolyRing":
        """A new ring with extra variables appended (algebra link dropped)."""
        return PolyRing(self.names + tuple(names))

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"


def pack(exps: Sequence[int], nvars: int | None = None) -> int:
    if nvars is not None and len(exps) != nvars:
        raise ValueError(f"exponent vector has length {len(exps)}, expected {nvars}")
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (BITS * i)
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple(key.to_bytes(nvars, "little")) if nvars else ()


def key_degree(key: int, nvars: int) -> int:
    return sum(key.to_bytes(nvars, "little")) if nvars else 0


class Poly:
    """Immutable sparse polynomial. Use the ring's constructors to make one."""

    __slots__ = ("ring", "_terms", "_degree", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[int, object]):
        self.ring = ring
        self._terms = terms
        self._degree = None
        self._hash = None

    # -- basic accessors -------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_term(self):
        return self._terms.get(0, 0)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._degree is None:
            n = self.nvars
            self._degree = max((key_degree(k, n) for k in self._terms), default=-1)
        return self._degree

    def raw_terms(self) -> dict[int, object]:
        """The packed-key dictionary. Callers must not mutate it."""
        return self._terms

    def _sort_key(self, key: int):
        b = key.to_bytes(self.nvars, "little") if self.nvars else b""
        return (sum(b), b)

    def sorted_keys(self) -> list[int]:
        """Keys in canonical graded-lexicographic order (x0 > x1 > ...)."""
        return sorted(self._terms, key=self._sort_key, reverse=True)

    def terms(self) -> Iterator[tuple[tuple[int, ...], object]]:
        n = self.nvars
        for k in self.sorted_keys():
            yield unpack(k, n), self._terms[k]

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(pack(exps, self.nvars), 0)

    def variables(self) -> set[int]:
        n = self.nvars
        used = 0
        for k in self._terms:
            used |= k
        return {i for i, b in enumerate(unpack(used, n)) if b}

    def is_homogeneous(self) -> bool:
        n = self.nvars
        return len({key_degree(k, n) for k in self._terms}) <= 1

    def homogeneous_components(self) -> dict[int, "Poly"]:
        n = self.nvars
        parts: dict[int, dict[int, object]] = {}
        for k, c in self._terms.items():
            parts.setdefault(key_degree(k, n), {})[k] = c
        return {d: Poly(self.ring, t) for d, t in sorted(parts.items())}

    # -- equality --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self._terms == other._terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({0: c} if c else {})

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        _check_cap(len(out))
        return Poly(self.ring, {k: as_rational(c) for k, c in out.items()})

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {k: as_rational(v * c) for k, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        if self.degree >= 0 and other.degree >= 0 and self.degree + other.degree > MAX_EXPONENT:
            raise OverflowError("product degree exceeds the packed-exponent range")
        out: dict[int, object] = {}
        _accumulate_product(out, self._terms, other._terms)
        return _finish(self.ring, out)

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def __truediv__(self, other) -> "Poly":
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(Fraction(1) / c)

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, exps: Sequence[int], c=1) -> "Poly":
        """Multiply by the monomial ``c * x^exps``."""
        m = pack(exps, self.nvars)
        c = as_rational(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {k + m: as_rational(v * c) for k, v in self._terms.items()})

    # -- calculus ---------------------------------------------------------
    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to variable ``i``."""
        shift = BITS * i
        one = 1 << shift
        out = {}
        for k, c in self._terms.items():
            e = (k >> shift) & MASK
            if e:
                out[k - one] = c * e
        return Poly(self.ring, out)

    def gradient(self) -> list["Poly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def directional_derivative(self, direction: Sequence) -> "Poly":
        """``d/dt F(x + t v)`` at ``t = 0``."""
        out = self.ring.zero()
        for i, v in enumerate(direction):
            v = as_rational(v)
            if v:
                out = out + self.diff(i).scale(v)
        return out

    # -- evaluation and substitution -------------------------------------
    def __call__(self, point: Sequence):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        """Exact value at a rational point."""
        n = self.nvars
        if len(point) != n:
            raise ValueError(f"point has {len(point)} coordinates, ring has {n}")
        pt = [as_rational(x) for x in point]
        total = 0
        for k, c in self._terms.items():
            v = c
            if k:
                for i, e in enumerate(k.to_bytes(n, "little")):
                    if e:
                        v *= pt[i] ** e
            total += v
        return as_rational(total)

    def substitute(self, images: Sequence["Poly"], ring: PolyRing | None = None) -> "Poly":
        """Replace variable ``i`` by ``images[i]`` (all in one target ring)."""
        n = self.nvars
        if len(images) != n:
            raise ValueError(f"need {n} images, got {len(images)}")
        if ring is None:
            if not images:
                raise ValueError("target ring required when there are no variables")
            ring = images[0].ring
        powers: list[dict[int, Poly]] = [{} for _ in range(n)]

        def power(i: int, e: int) -> Poly:
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return cache[e]

        out: dict[int, object] = {}
        for k, c in self._terms.items():
            term: dict[int, object] = {0: c}
            if k:
                for i, e in enumerate(k.to_bytes(n, "little")):
                    if e:
                        nxt: dict[int, object] = {}
                        _accumulate_product(nxt, term, power(i, e)._terms)
                        term = {kk: vv for kk, vv in nxt.items() if vv}
                        if not term:
                            break
            for kk, vv in term.items():
                out[kk] = out.get(kk, 0) + vv
        return _finish(ring, out)

    def partial_evaluate(self, values: Mapping[int, object]) -> "Poly":
        """Fix some variables to rational values, staying in the same ring."""
        vals = {i: as_rational(v) for i, v in values.items()}
        out: dict[int, object] = {}
        for k, c in self._terms.items():
            v = c
            key = k
            for i, x in vals.items():
                e = (k >> (BITS * i)) & MASK
                if e:
                    v *= x**e
                    key -= e << (BITS * i)
            if v:
                out[key] = out.get(key, 0) + v
        return _finish(self.ring, out)

    # -- printing ----------------------------------------------------------
    def to_text(self) -> str:
        """Canonical lossless text: ``c*x[i]^e*x[j] + ...`` in graded-lex order."""
        return _format(self, lambda i: f"x[{i}]", unit_coeff=True)

    def pretty(self) -> str:
        return _format(self, lambda i: self.ring.names[i], unit_coeff=False)

    def __repr__(self) -> str:
        return f"Poly({self.pretty()})"

    def __str__(self) -> str:
        return self.pretty()


def _accumulate_product(out: dict, a: Mapping, b: Mapping) -> None:
    if len(a) < len(b):
        a, b = b, a
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb


def _finish(ring: PolyRing, out: dict) -> Poly:
    terms = {k: as_rational(c) for k, c in out.items() if c}
    _check_cap(len(terms))
    return Poly(ring, terms)


def _format(p: Poly, name, unit_coeff: bool) -> str:
    if p.is_zero():
        return "0"
    parts = []
    n = p.nvars
    for idx, k in enumerate(p.sorted_keys()):
        c = p._terms[k]
        sign = "-" if c < 0 else "+"
        mag = str(abs(c))
        factors = [mag]
        for i, e in enumerate(unpack(k, n)):
            if e == 1:
                factors.append(name(i))
            elif e > 1:
                factors.append(f"{name(i)}^{e}")
        if not unit_coeff and mag == "1" and len(factors) > 1:
            factors.pop(0)
        body = "*".join(factors)
        if idx == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"^x\[(\d+)\](?:\^(\d+))?$")
_NAMED_RE = re.compile(r"^([A-Za-z_][\w']*)(?:\^(\d+))?$")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Inverse of :meth:`Poly.to_text`; variable names as in ``pretty`` are accepted too."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    terms: dict[tuple[int, ...], object] = {}
    pos = 0
    n = ring.nvars
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff: object = sign
        exps = [0] * n
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            fm = _FACTOR_RE.match(factor)
            if fm:
                i = int(fm.group(1))
                if i >= n:
                    raise ValueError(f"variable index {i} out of range for {n} variables")
                exps[i] += int(fm.group(2) or 1)
                continue
            nm = _NAMED_RE.match(factor)
            if nm:
                if nm.group(1) not in ring.names:
                    raise ValueError(f"unknown variable {nm.group(1)!r}")
                exps[ring.index(nm.group(1))] += int(nm.group(2) or 1)
            else:
                coeff = coeff * Fraction(factor)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return ring.from_terms(terms)


def poly_matrix_mul(a: Sequence[Sequence[Poly]], b: Sequence[Sequence[Poly]]) -> list[list[Poly]]:
    """Product of matrices with polynomial entries."""
    ring = a[0][0].ring
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc: dict[int, object] = {}
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    _accumulate_product(acc, a[i][k]._terms, b[k][j]._terms)
            row.append(_finish(ring, acc))
        out.append(row)
    return out


def poly_matrix_trace(m: Sequence[Sequence[Poly]]) -> Poly:
    out = m[0][0].ring.zero()
    for i in range(len(m)):
        out = out + m[i][i]
    return out
