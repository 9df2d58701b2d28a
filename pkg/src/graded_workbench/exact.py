"""Exact rational linear algebra and polynomial arithmetic.

Scalars are :class:`fractions.Fraction`. Vectors are tuples of Fractions,
matrices are :class:`Matrix` (immutable, explicit shape). Heavy lifting goes
through the integer kernels in :mod:`graded_workbench.kernels`: rational rows
are scaled to primitive integer rows, reduced fraction-free, then divided back
by their pivots.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


# --------------------------------------------------------------------------
# scalars


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def vec(*xs) -> tuple:
    return tuple(as_rational(x) for x in xs)


def zeros(n: int) -> tuple:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def add(u, v):
    if len(u) != len(v):
        raise DimensionError(f"length {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    if len(u) != len(v):
        raise DimensionError(f"length {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def lin_comb(coeffs, vectors, n: int):
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


def to_integer_row(v: Sequence[Fraction]) -> list:
    """Scale a rational row to a primitive integer row with the same span."""
    den = 1
    for a in v:
        if a.denominator != 1:
            den = den * a.denominator // math.gcd(den, a.denominator)
    return kernels.make_primitive([int(a * den) for a in v])


def from_pivot_row(row: Sequence[int], pivot: int) -> tuple:
    p = row[pivot]
    return tuple(Fraction(a, p) if a else ZERO for a in row)


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise DimensionError("row data does not match the declared shape")

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("column count of an empty matrix must be given")
            ncols = len(rows[0])
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols, tuple(zeros(ncols) for _ in range(nrows)))

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, tuple(self.column(j) for j in range(self.ncols)))

    def apply(self, v: Sequence[Fraction]) -> tuple:
        if len(v) != self.ncols:
            raise DimensionError(f"matrix has {self.ncols} columns, vector length {len(v)}")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"{self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        cols = [other.column(j) for j in range(other.ncols)]
        rows = tuple(
            tuple(sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in cols)
            for r in self.rows
        )
        return Matrix(self.nrows, other.ncols, rows)

    def trimmed(self) -> "Matrix":
        rows = tuple(r for r in self.rows if any(r))
        return Matrix(len(rows), self.ncols, rows)


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form, zero rows kept at the bottom (shape preserved)."""
    basis, pivots = rref_basis(m.rows, m.ncols)
    rows = list(basis) + [zeros(m.ncols)] * (m.nrows - len(basis))
    return Matrix(m.nrows, m.ncols, tuple(rows))


def rref_basis(rows, ncols: int):
    """RREF of the row space: ``(basis rows, pivot columns)`` with zero rows dropped."""
    int_rows = [to_integer_row(r) for r in rows if any(r)]
    basis, pivots = kernels.rref_rows(int_rows, ncols)
    return tuple(from_pivot_row(b, p) for b, p in zip(basis, pivots)), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref_basis(m.rows, m.ncols)[0])


def nullspace(m: Matrix) -> tuple:
    """Basis of ``{x : m x = 0}`` read off the RREF, one vector per free column."""
    basis, pivots = rref_basis(m.rows, m.ncols)
    pivot_set = set(pivots)
    out = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        x = [ZERO] * m.ncols
        x[free] = ONE
        for row, p in zip(basis, pivots):
            x[p] = -row[free]
        out.append(tuple(x))
    return tuple(out)


def solve(a: Matrix, b: Sequence[Fraction]):
    """Some ``x`` with ``a x = b``, or None when the system is inconsistent.

    Free variables are set to zero. Raises :class:`DimensionError` when
    ``len(b) != a.nrows``.
    """
    if len(b) != a.nrows:
        raise DimensionError(f"system has {a.nrows} equations, right-hand side length {len(b)}")
    n = a.ncols
    aug = [tuple(r) + (as_rational(c),) for r, c in zip(a.rows, b)]
    basis, pivots = rref_basis(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(basis, pivots):
        x[p] = row[n]
    return tuple(x)


def det(m: Matrix) -> Fraction:
    """Exact determinant by Fraction Gaussian elimination."""
    if m.nrows != m.ncols:
        raise DimensionError("determinant of a non-square matrix")
    a = [list(r) for r in m.rows]
    n = m.nrows
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        p = a[c][c]
        d *= p
        for i in range(c + 1, n):
            f = a[i][c] / p
            if f:
                for k in range(c, n):
                    a[i][k] -= f * a[c][k]
    return d


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Row space stored in canonical RREF; equal subspaces compare equal."""

    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def __contains__(self, v) -> bool:
        return subspace_contains(self, v)


def span(vectors: Iterable[Sequence[Fraction]], ambient_dim: int) -> Subspace:
    vectors = [tuple(as_rational(x) for x in v) for v in vectors]
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    basis, pivots = rref_basis(vectors, ambient_dim)
    return Subspace(ambient_dim, basis, pivots)


def zero_subspace(n: int) -> Subspace:
    return Subspace(n)


def full_subspace(n: int) -> Subspace:
    return Subspace(n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))


def _check_ambient(*spaces) -> int:
    dims = {s.ambient_dim for s in spaces}
    if len(dims) != 1:
        raise DimensionError(f"ambient dimensions differ: {sorted(dims)}")
    return dims.pop()


def subspace_contains(s: Subspace, v) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    if not any(v):
        return True
    residual = list(v)
    for row, p in zip(s.basis, s.pivots):
        c = residual[p]
        if c:
            for k, a in enumerate(row):
                if a:
                    residual[k] -= c * a
    return not any(residual)


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    n = _check_ambient(s1, s2)
    return span(s1.basis + s2.basis, n)


def subspace_intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """Intersection from the kernel of the stacked bases ``[B1; -B2]^T``."""
    n = _check_ambient(s1, s2)
    if s1.is_zero() or s2.is_zero():
        return zero_subspace(n)
    k1 = s1.dim
    stacked = s1.basis + tuple(scale(-ONE, b) for b in s2.basis)
    kernel = nullspace(Matrix(len(stacked), n, stacked).transpose())
    vecs = [lin_comb(z[:k1], s1.basis, n) for z in kernel]
    return span(vecs, n)


def subspace_equal(s1: Subspace, s2: Subspace) -> bool:
    _check_ambient(s1, s2)
    return s1.basis == s2.basis


def is_subspace_of(s1: Subspace, s2: Subspace) -> bool:
    _check_ambient(s1, s2)
    return all(subspace_contains(s2, b) for b in s1.basis)


def coordinates_in(s: Subspace, v) -> tuple:
    """Coefficients of ``v`` in the RREF basis of ``s`` (``v`` must lie in ``s``)."""
    coords = tuple(v[p] for p in s.pivots)
    if lin_comb(coords, s.basis, s.ambient_dim) != tuple(v):
        raise ValueError("vector is not in the subspace")
    return coords


class EchelonBuilder:
    """Incrementally grown integer semi-echelon basis used in closure loops.

    Local mutable state only; :meth:`subspace` returns the canonical result.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: list = []
        self.pivots: list = []

    def __len__(self):
        return len(self.rows)

    def add(self, int_vec) -> list | None:
        """Insert an integer vector; returns its residual if it enlarged the span."""
        r = kernels.reduce_against(int_vec, self.rows, self.pivots)
        for p, a in enumerate(r):
            if a:
                break
        else:
            return None
        i = 0
        while i < len(self.pivots) and self.pivots[i] < p:
            i += 1
        self.rows.insert(i, r)
        self.pivots.insert(i, p)
        return r

    def contains(self, int_vec) -> bool:
        return not any(kernels.reduce_against(int_vec, self.rows, self.pivots))

    def subspace(self) -> Subspace:
        basis, pivots = kernels.rref_rows(self.rows, self.ambient_dim)
        return Subspace(
            self.ambient_dim,
            tuple(from_pivot_row(b, p) for b, p in zip(basis, pivots)),
            tuple(pivots),
        )


# --------------------------------------------------------------------------
# univariate polynomials


def _trim(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial, ``coeffs[k]`` is the coefficient of ``z**k``."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(as_rational(c) for c in self.coeffs))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def z(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [ZERO] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.lead()
        dl = other.degree
        while len(rem) - 1 >= dl and rem:
            shift = len(rem) - 1 - dl
            c = rem[-1] / lead
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] -= c * b
            rem = list(_trim(rem))
        return Poly(tuple(q)), Poly(tuple(rem))

    def divides(self, other: "Poly") -> bool:
        """Whether ``self`` divides ``other`` in Q[z]."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def to_json(self) -> dict:
        return {"offset": 0, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if isinstance(obj, list):
            return cls(tuple(as_rational(c) for c in obj))
        if obj.get("offset", 0) != 0:
            raise ValueError("polynomial offset must be 0")
        return cls(tuple(as_rational(c) for c in obj["coeffs"]))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return "Poly(" + " + ".join(terms) + ")"


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(as_rational(x))


def poly_shift(f: Poly, c) -> Poly:
    """``f(z + c)`` by binomial expansion."""
    c = as_rational(c)
    out = [ZERO] * len(f.coeffs)
    for k, a in enumerate(f.coeffs):
        if not a:
            continue
        cp = ONE
        for j in range(k, -1, -1):
            # term binom(k, j) z^j c^(k-j)
            out[j] += a * math.comb(k, j) * cp
            cp *= c
    return Poly(tuple(out))


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial ``sum coeffs[k] * t**(low + k)``; zero has low = 0."""

    coeffs: tuple = ()
    low: int = 0

    def __post_init__(self):
        cs = [as_rational(c) for c in self.coeffs]
        low = self.low
        while cs and not cs[0]:
            cs.pop(0)
            low += 1
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            low = 0
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "low", low)

    @classmethod
    def monomial(cls, c, k: int) -> "LaurentPoly":
        return cls((c,), k)

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        i = k - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def terms(self):
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def __add__(self, other):
        other = _as_laurent(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        return LaurentPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)), lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple(-c for c in self.coeffs), self.low)

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __mul__(self, other):
        other = _as_laurent(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return LaurentPoly(tuple(out), self.low + other.low)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"offset": self.low, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        return cls(tuple(as_rational(c) for c in obj["coeffs"]), int(obj.get("offset", 0)))


def _as_laurent(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.monomial(as_rational(x), 0)


# --------------------------------------------------------------------------
# multivariate polynomials and symbolic determinants

SYM_DET_MAX = 6


class MultiPoly:
    """Sparse multivariate polynomial ``{exponent tuple: coefficient}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                e = tuple(e)
                if len(e) != nvars:
                    raise DimensionError(f"exponent {e} for {nvars} variables")
                self.terms[e] = c

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        return cls(nvars, {tuple(1 if k == i else 0 for k in range(nvars)): 1})

    @classmethod
    def linear(cls, coeffs) -> "MultiPoly":
        """``sum coeffs[i] * x_i``."""
        n = len(coeffs)
        return cls(n, {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, point) -> Fraction:
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= as_rational(x) ** k
            total += t
        return total

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.terms})"


def _perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sym_det(m) -> MultiPoly:
    """Determinant of a square matrix of MultiPoly entries by permutation expansion.

    Capped at :data:`SYM_DET_MAX` rows; raises :class:`DimensionError` above it.
    """
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("symbolic determinant of a non-square matrix")
    if n > SYM_DET_MAX:
        raise DimensionError(f"symbolic determinant capped at {SYM_DET_MAX}x{SYM_DET_MAX}, got {n}x{n}")
    if n == 0:
        raise DimensionError("empty matrix")
    nvars = m[0][0].nvars
    total = MultiPoly(nvars)
    for p in itertools.permutations(range(n)):
        term = None
        for i in range(n):
            entry = m[i][p[i]]
            if entry.is_zero():
                term = None
                break
            term = entry if term is None else term * entry
        else:
            total = total + (term * _perm_sign(p))
    return total
