"""Finite dynamical systems ``(X, h)`` and the crossed products ``Q^X x|_h Z``.

X is finite and discrete: "dense" means "equal to X" and every subset is
closed. Periods are taken over nonzero n only when forming Per(h).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import ONE, ZERO, LaurentPoly, span, subspace_intersect

INFINITE_X_NOTE = (
    "the equivalence simple <=> maximal commutative and Z-simple <=> minimal is "
    "asserted for infinite X; here X is finite"
)


@dataclass(frozen=True)
class FiniteDynSystem:
    x_size: int
    h: tuple

    def __post_init__(self):
        h = tuple(int(v) for v in self.h)
        if self.x_size < 1 or len(h) != self.x_size or sorted(h) != list(range(self.x_size)):
            raise ValueError(f"h must be a permutation of 0..{self.x_size - 1}, got {list(self.h)}")
        object.__setattr__(self, "h", h)

    @classmethod
    def from_json(cls, obj) -> "FiniteDynSystem":
        return cls(int(obj["x_size"]), tuple(obj["h"]))

    def to_json(self) -> dict:
        return {"x_size": self.x_size, "h": list(self.h)}

    def inverse(self) -> tuple:
        inv = [0] * self.x_size
        for x, y in enumerate(self.h):
            inv[y] = x
        return tuple(inv)

    def iterate(self, x: int, n: int) -> int:
        step = self.h if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            x = step[x]
        return x

    def power(self, n: int) -> tuple:
        return tuple(self.iterate(x, n) for x in range(self.x_size))


def per_n(d: FiniteDynSystem, n: int) -> frozenset:
    return frozenset(x for x in range(d.x_size) if d.iterate(x, n) == x)


def per(d: FiniteDynSystem) -> frozenset:
    """Union of Per^n over nonzero n; on a finite set n ranges up to |X|."""
    out = set()
    for n in range(1, d.x_size + 1):
        out |= per_n(d, n)
    return frozenset(out)


def aper(d: FiniteDynSystem) -> frozenset:
    return frozenset(range(d.x_size)) - per(d)


def orbits(d: FiniteDynSystem) -> list:
    seen = set()
    out = []
    for x in range(d.x_size):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = d.h[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = d.h[y]
        out.append(cyc)
    return out


def is_minimal(d: FiniteDynSystem) -> bool:
    """Every orbit equals X."""
    return all(len(o) == d.x_size for o in orbits(d))


def is_top_free(d: FiniteDynSystem) -> bool:
    return aper(d) == frozenset(range(d.x_size))


def invariant_subset_witness(d: FiniteDynSystem):
    """Smallest nonempty proper subset S with h(S) = S, by exhaustive search; None if none exists."""
    n = d.x_size
    for size in range(1, n):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if {d.h[x] for x in s} == s:
                return frozenset(s)
    return None


def is_z_simple_coefficients(d: FiniteDynSystem) -> bool:
    """No nonempty proper h-invariant subset, hence no proper invariant ideal of Q^X."""
    return invariant_subset_witness(d) is None


# --------------------------------------------------------------------------
# crossed product elements


class CrossedElement:
    """Finitely supported ``sum_n f_n u_n``; ``parts[n]`` is a tuple over X."""

    __slots__ = ("x_size", "parts")

    def __init__(self, x_size: int, parts=None):
        self.x_size = x_size
        self.parts = {}
        for n, f in (parts or {}).items():
            f = tuple(Fraction(c) for c in f)
            if len(f) != x_size:
                raise ValueError(f"component {n} has length {len(f)}, expected {x_size}")
            if any(f):
                self.parts[int(n)] = f

    @classmethod
    def monomial(cls, x_size: int, f, n: int) -> "CrossedElement":
        return cls(x_size, {n: f})

    @classmethod
    def u(cls, x_size: int, n: int) -> "CrossedElement":
        return cls(x_size, {n: (ONE,) * x_size})

    @classmethod
    def one(cls, x_size: int) -> "CrossedElement":
        return cls.u(x_size, 0)

    def is_zero(self) -> bool:
        return not self.parts

    def __eq__(self, other):
        return isinstance(other, CrossedElement) and self.x_size == other.x_size and self.parts == other.parts

    def __hash__(self):
        return hash((self.x_size, frozenset(self.parts.items())))

    def __add__(self, other):
        out = dict(self.parts)
        for n, f in other.parts.items():
            g = out.get(n, (ZERO,) * self.x_size)
            out[n] = tuple(a + b for a, b in zip(g, f))
        return CrossedElement(self.x_size, out)

    def __neg__(self):
        return CrossedElement(self.x_size, {n: tuple(-c for c in f) for n, f in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CrossedElement":
        return CrossedElement(self.x_size, {n: tuple(c * a for a in f) for n, f in self.parts.items()})

    def support(self) -> list:
        return sorted(self.parts)

    def to_json(self) -> dict:
        return {str(n): [f"{c.numerator}/{c.denominator}" for c in f] for n, f in sorted(self.parts.items())}

    def __repr__(self):
        return f"CrossedElement({self.parts})"


def crossed_mul(d: FiniteDynSystem, a: CrossedElement, b: CrossedElement) -> CrossedElement:
    """Bilinear extension of ``(f u_n)(g u_m) = f (g o h^n) u_{n+m}``."""
    out = {}
    powers = {}
    for n, f in a.parts.items():
        hn = powers.setdefault(n, d.power(n))
        for m, g in b.parts.items():
            moved = [g[hn[x]] for x in range(d.x_size)]
            prod = [fa * gb for fa, gb in zip(f, moved)]
            acc = out.get(n + m)
            out[n + m] = prod if acc is None else [p + q for p, q in zip(acc, prod)]
    return CrossedElement(d.x_size, out)


def random_crossed(d: FiniteDynSystem, rng: random.Random, lo: int = -3, hi: int = 3, terms: int = 3) -> CrossedElement:
    parts = {}
    for _ in range(rng.randint(1, terms)):
        n = rng.randint(lo, hi)
        parts[n] = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d.x_size))
    return CrossedElement(d.x_size, parts)


def commutant_membership(d: FiniteDynSystem, a: CrossedElement) -> bool:
    """``a`` commutes with Q^X iff each f_n vanishes off Per^n(h)."""
    for n, f in a.parts.items():
        p = per_n(d, n)
        if any(c and x not in p for x, c in enumerate(f)):
            return False
    return True


def commutes_with_functions(d: FiniteDynSystem, a: CrossedElement) -> bool:
    """Direct route: ``a`` commutes with every point indicator."""
    for x in range(d.x_size):
        ind = CrossedElement.monomial(d.x_size, tuple(ONE if y == x else ZERO for y in range(d.x_size)), 0)
        if crossed_mul(d, a, ind) != crossed_mul(d, ind, a):
            return False
    return True


def verdict_max_commutative(d: FiniteDynSystem) -> bool:
    """Q^X is maximal commutative iff (X, h) is topologically free."""
    return is_top_free(d)


# --------------------------------------------------------------------------
# single-orbit systems: the isomorphism onto p x p Laurent matrices


class LaurentMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [[e if isinstance(e, LaurentPoly) else LaurentPoly.monomial(e, 0) for e in r] for r in rows]

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, p: int) -> "LaurentMatrix":
        return cls([[LaurentPoly() for _ in range(p)] for _ in range(p)])

    @classmethod
    def identity(cls, p: int) -> "LaurentMatrix":
        return cls([[LaurentPoly.monomial(1, 0) if i == j else LaurentPoly() for j in range(p)] for i in range(p)])

    @classmethod
    def scalar_t(cls, p: int, k: int = 1) -> "LaurentMatrix":
        return cls([[LaurentPoly.monomial(1, k) if i == j else LaurentPoly() for j in range(p)] for i in range(p)])

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __add__(self, other):
        return LaurentMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __matmul__(self, other):
        p = self.size
        out = []
        for i in range(p):
            row = []
            for j in range(p):
                acc = LaurentPoly()
                for k in range(p):
                    a = self.rows[i][k]
                    b = other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = LaurentMatrix.identity(self.size)
        for _ in range(n):
            out = out @ self
        return out

    def evaluate(self, t) -> list:
        """Entrywise substitution of a nonzero rational for t."""
        t = Fraction(t)
        return [[sum((c * t ** k for k, c in e.terms().items()), ZERO) for e in r] for r in self.rows]

    def coordinates(self, lo: int, hi: int) -> tuple:
        """Flattened coefficients for degrees lo..hi (entries outside the window must vanish)."""
        out = []
        for r in self.rows:
            for e in r:
                if not e.is_zero() and (e.low < lo or e.high > hi):
                    raise ValueError("entry outside the degree window")
                out.extend(e.coeff(k) for k in range(lo, hi + 1))
        return tuple(out)

    def to_json(self) -> list:
        return [[e.to_json() for e in r] for r in self.rows]


def _single_orbit(d: FiniteDynSystem) -> list:
    orbs = orbits(d)
    if len(orbs) != 1:
        raise ValueError(f"pi needs a single orbit; system has {len(orbs)}")
    return [d.iterate(0, i) for i in range(d.x_size)]


def shift_matrix(p: int) -> LaurentMatrix:
    """Image of u_1: ones at (i, i+1 mod p), with weight t on row 0."""
    m = LaurentMatrix.zero(p)
    for i in range(p):
        m.rows[i][(i + 1) % p] = LaurentPoly.monomial(1, 1 if i == 0 else 0)
    return m


def pi_u(p: int, n: int) -> LaurentMatrix:
    """Closed form for the image of u_n: entry (i, i+n mod p) is t^k, k = signed count of row-0 crossings."""
    m = LaurentMatrix.zero(p)
    for i in range(p):
        if n >= 0:
            k = sum(1 for j in range(n) if (i + j) % p == 0)
        else:
            k = -sum(1 for j in range(1, -n + 1) if (i - j) % p == 0)
        m.rows[i][(i + n) % p] = LaurentPoly.monomial(1, k)
    return m


def pi(d: FiniteDynSystem, a: CrossedElement) -> LaurentMatrix:
    """``sum f_n u_n -> sum diag(f(x), f(h x), ...) * pi(u_n)`` with base point 0."""
    order = _single_orbit(d)
    p = d.x_size
    out = LaurentMatrix.zero(p)
    for n, f in a.parts.items():
        un = pi_u(p, n)
        term = LaurentMatrix([[un.rows[i][j] * f[order[i]] for j in range(p)] for i in range(p)])
        out = out + term
    return out


def verify_pi(d: FiniteDynSystem, samples: int = 100, seed: int = 0, window: int = 2) -> dict:
    """Homomorphism on sampled pairs, unit and u_1^p checks, and degree-windowed bijectivity."""
    order = _single_orbit(d)
    p = d.x_size
    rng = random.Random(seed)
    hom_fail = 0
    for _ in range(samples):
        a = random_crossed(d, rng)
        b = random_crossed(d, rng)
        if pi(d, crossed_mul(d, a, b)) != pi(d, a) @ pi(d, b):
            hom_fail += 1
    unital = pi(d, CrossedElement.one(p)) == LaurentMatrix.identity(p)
    u1 = pi(d, CrossedElement.u(p, 1))
    power_ok = (u1 ** p) == LaurentMatrix.scalar_t(p)
    closed_form_ok = all(pi_u(p, n) == shift_matrix(p) ** n for n in range(0, 2 * p + 1)) and all(
        pi_u(p, -n) @ pi_u(p, n) == LaurentMatrix.identity(p) for n in range(1, 2 * p + 1)
    )

    # degree window [-D, D]: crossed elements supported in [-pD - p, pD + p]
    D = window
    lo_n, hi_n = -p * D - p, p * D + p
    lo_k, hi_k = -D - 2, D + 2
    images = []
    for n in range(lo_n, hi_n + 1):
        for x in range(p):
            f = tuple(ONE if y == x else ZERO for y in range(p))
            images.append(pi(d, CrossedElement.monomial(p, f, n)).coordinates(lo_k, hi_k))
    width = hi_k - lo_k + 1
    ambient = p * p * width
    image = span(images, ambient)
    window_vecs = []
    for i in range(p):
        for j in range(p):
            for k in range(-D, D + 1):
                v = [ZERO] * ambient
                v[(i * p + j) * width + (k - lo_k)] = ONE
                window_vecs.append(tuple(v))
    window_space = span(window_vecs, ambient)
    meet = subspace_intersect(image, window_space)
    return {
        "p": p,
        "orbit_order": order,
        "samples": samples,
        "seed": seed,
        "homomorphism_failures": hom_fail,
        "unital": unital,
        "u1_power_is_t": power_ok,
        "closed_form_matches_powers": closed_form_ok,
        "window": D,
        "domain_dim": len(images),
        "image_rank": image.dim,
        "injective": image.dim == len(images),
        "window_dim_expected": p * p * (2 * D + 1),
        "window_dim_covered": meet.dim,
        "pass": hom_fail == 0 and unital and power_ok and closed_form_ok
        and image.dim == len(images) and meet.dim == p * p * (2 * D + 1),
    }


def evaluation_certificate(d: FiniteDynSystem) -> dict:
    """Proper ideal for a single orbit: (1 - u_p) lies in the kernel of pi followed by t -> 1."""
    p = d.x_size
    gen = CrossedElement.one(p) - CrossedElement.u(p, p)
    img = pi(d, gen).evaluate(1)
    unit_img = pi(d, CrossedElement.one(p)).evaluate(1)
    return {
        "generator": gen.to_json(),
        "pi_image": pi(d, gen).to_json(),
        "killed_by_t_equals_1": all(c == 0 for r in img for c in r),
        "unit_survives": any(c != 0 for r in unit_img for c in r),
    }


def verdict_simple(d: FiniteDynSystem) -> dict:
    minimal = is_minimal(d)
    z_simple = is_z_simple_coefficients(d)
    max_comm = verdict_max_commutative(d)
    report = {
        "max_commutative": max_comm,
        "z_simple": z_simple,
        "minimal": minimal,
        "simple": max_comm and z_simple,
        "evidence_kind": "theorem-derived",
        "clause": "skew group ring simple iff coefficients maximal commutative and Z-simple",
        "note": INFINITE_X_NOTE,
    }
    if not max_comm:
        report["reason"] = "not topologically free => Q^X is not maximal commutative"
    if not z_simple:
        s = invariant_subset_witness(d)
        report["invariant_subset"] = sorted(s)
    elif len(orbits(d)) == 1:
        report["proper_ideal"] = evaluation_certificate(d)
    return report


def dynsys_report(d: FiniteDynSystem, samples: int = 100, seed: int = 0, window: int = 2) -> dict:
    out = {
        "system": d.to_json(),
        "orbits": orbits(d),
        "per": {str(n): sorted(per_n(d, n)) for n in range(1, d.x_size + 1)},
        "aper": sorted(aper(d)),
        "minimal": is_minimal(d),
        "top_free": is_top_free(d),
        "z_simple": is_z_simple_coefficients(d),
        "simplicity": verdict_simple(d),
    }
    if len(orbits(d)) == 1 and samples:
        out["pi"] = verify_pi(d, samples, seed, window)
    return out
