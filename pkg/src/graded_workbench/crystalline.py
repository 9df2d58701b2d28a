"""Pre-crystalline graded rings, their axiom checks, and the first Weyl algebra.

The Weyl algebra ``Q<x, y>/(xy - yx - 1)`` is handled through normal forms in
the basis ``x^a y^b``. With ``z = xy`` its neutral component is ``Q[z]`` and
``u_n = x^n`` (``n >= 0``), ``u_n = y^-n`` (``n < 0``); the twisting data
``sigma`` and ``alpha`` are derived from normal forms rather than entered.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .coeff import (
    FunctionRing,
    PermutationInduced,
    PolyCoeffRing,
    PrincipalIdeal,
    Shift,
    is_g_invariant_ideal,
    is_g_simple,
    is_simple_ring,
)
from .exact import ONE, ZERO, Matrix, Poly, format_rational, nullspace, span
from .groups import FiniteGroup, IntegerGroup

DEFAULT_BOUND = 4


# --------------------------------------------------------------------------
# Weyl algebra normal forms


class WeylElement:
    """``sum c_ab x^a y^b`` stored as ``{(a, b): c}`` without zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls):
        return cls({(0, 0): ONE})

    @classmethod
    def x(cls, k: int = 1):
        return cls({(k, 0): ONE})

    @classmethod
    def y(cls, k: int = 1):
        return cls({(0, k): ONE})

    @classmethod
    def from_poly_in_z(cls, p: Poly):
        out = cls()
        zk = cls.one()
        z = cls({(1, 1): ONE})
        for c in p.coeffs:
            if c:
                out = out + zk * c
            zk = zk * z
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return WeylElement(out)

    def __neg__(self):
        return WeylElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return WeylElement({k: v * other for k, v in self.terms.items()})
        out = {}
        for (a, b), c1 in self.terms.items():
            for (c, d), c2 in other.terms.items():
                # y^b x^c = sum_k (-1)^k k! C(b,k) C(c,k) x^(c-k) y^(b-k)
                for k in range(min(b, c) + 1):
                    coef = c1 * c2 * (-1) ** k * math.factorial(k) * math.comb(b, k) * math.comb(c, k)
                    key = (a + c - k, b + d - k)
                    out[key] = out.get(key, ZERO) + coef
        return WeylElement(out)

    __rmul__ = __mul__

    def grade(self) -> set:
        return {a - b for a, b in self.terms}

    def to_json(self) -> list:
        return [[a, b, format_rational(c)] for (a, b), c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), reverse=True):
            mono = "".join(s for s in (f"x^{a}" if a > 1 else "x" if a else "", f"y^{b}" if b > 1 else "y" if b else ""))
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts)


def weyl_normal_form(word: str, strategy: str = "leftmost") -> WeylElement:
    """Normal form of a word over ``{x, y}`` by rewriting ``yx -> xy - 1``.

    ``strategy`` picks which ``yx`` occurrence is rewritten first; the
    result does not depend on it.
    """
    if set(word) - {"x", "y"}:
        raise ValueError(f"word {word!r} uses letters other than x and y")
    pending = {word: ONE}
    done = {}
    while pending:
        w, c = pending.popitem()
        pos = w.find("yx") if strategy == "leftmost" else w.rfind("yx")
        if pos < 0:
            done[w] = done.get(w, ZERO) + c
            continue
        swapped = w[:pos] + "xy" + w[pos + 2:]
        dropped = w[:pos] + w[pos + 2:]
        pending[swapped] = pending.get(swapped, ZERO) + c
        pending[dropped] = pending.get(dropped, ZERO) - c
        for k in (swapped, dropped):
            if not pending[k]:
                del pending[k]
    out = {}
    for w, c in done.items():
        if c:
            key = (w.count("x"), w.count("y"))
            out[key] = out.get(key, ZERO) + c
    return WeylElement(out)


def word_element(word: str) -> WeylElement:
    """Normal form by multiplying letters with the closed-form product (second route)."""
    out = WeylElement.one()
    for ch in word:
        out = out * (WeylElement.x() if ch == "x" else WeylElement.y())
    return out


def weyl_u(n: int) -> WeylElement:
    return WeylElement.x(n) if n >= 0 else WeylElement.y(-n)


def factor_neutral(e: WeylElement, k: int) -> Poly:
    """The ``p`` in ``Q[z]`` with ``e = p(z) u_k``; raises if ``e`` is not of that form."""
    if any(a - b != k for a, b in e.terms):
        raise ValueError(f"element is not homogeneous of degree {k}")
    uk = weyl_u(k)
    rem = WeylElement(e.terms)
    coeffs = {}
    while not rem.is_zero():
        # leading monomial of z^j u_k has y-power j (k >= 0) or j - k (k < 0)
        (a, b), c = max(rem.terms.items(), key=lambda t: t[0][1])
        j = b if k >= 0 else a
        coeffs[j] = c
        rem = rem - WeylElement.from_poly_in_z(Poly((0,) * j + (1,))) * uk * c
    top = max(coeffs, default=-1)
    return Poly(tuple(coeffs.get(j, ZERO) for j in range(top + 1)))


# --------------------------------------------------------------------------
# crystalline data


@dataclass
class CrystallineData:
    """``(A_0, G, sigma, alpha)``; ``sigma(g)`` is an automorphism, ``alpha(s, t)`` an element of A_0.

    ``ambient`` optionally supplies ``u(g)`` and ``embed(a)`` into a concrete
    algebra so that ``u_g a = sigma_g(a) u_g`` and ``u_s u_t = alpha(s,t) u_st``
    can be checked directly. ``overrides`` replaces individual alpha values.
    """

    base: object
    group: object
    sigma: Callable
    alpha_fn: Callable
    name: str = ""
    ambient: object = None
    overrides: dict = field(default_factory=dict)
    simplicity_attestation: str | None = None

    def alpha(self, s, t):
        if (s, t) in self.overrides:
            return self.overrides[(s, t)]
        return self.alpha_fn(s, t)

    def with_alpha(self, s, t, value) -> "CrystallineData":
        over = dict(self.overrides)
        over[(s, t)] = value
        return CrystallineData(self.base, self.group, self.sigma, self.alpha_fn, self.name,
                               self.ambient, over, None)

    # ring operations on A_0
    def one(self):
        return self.base.one()

    def mul(self, a, b):
        if isinstance(self.base, PolyCoeffRing):
            return a * b
        return self.base.mul(a, b)

    def is_zero(self, a) -> bool:
        return a.is_zero() if isinstance(a, Poly) else not any(a)

    def test_basis(self, bound: int) -> list:
        if isinstance(self.base, PolyCoeffRing):
            return [Poly((0,) * k + (1,)) for k in range(bound + 1)]
        return [self.base.indicator([x]) for x in range(self.base.size)]

    def elements(self, bound: int) -> list:
        if isinstance(self.group, IntegerGroup):
            return list(range(-bound, bound + 1))
        return list(self.group.elements())

    def op(self, s, t):
        return self.group.op(s, t)

    def inv(self, s):
        return self.group.inv(s)


def _fmt(a):
    if isinstance(a, Poly):
        return [format_rational(c) for c in a.coeffs]
    return [format_rational(c) for c in a]


def check_axioms(d: CrystallineData, bound: int = DEFAULT_BOUND) -> dict:
    """Verify the crystalline identities on the bounded range.

    normalization: sigma_e = id, alpha(g, e) = alpha(e, g) = 1
    cocycle:       alpha(s,t) alpha(st,w) = sigma_s(alpha(t,w)) alpha(s,tw)
    compatibility: sigma_s(sigma_t(a)) alpha(s,t) = alpha(s,t) sigma_st(a)
    inverse:       alpha(g, g^-1) = sigma_g(alpha(g^-1, g))
    and, with an ambient algebra, u_g a = sigma_g(a) u_g and u_s u_t = alpha(s,t) u_st.
    """
    elems = d.elements(bound)
    basis = d.test_basis(bound)
    e = d.group.identity
    one = d.one()
    checks = {}

    def record(name, failure, count):
        entry = checks.setdefault(name, {"pass": True, "checked": 0, "first_failure": None})
        entry["checked"] += count
        if failure is not None and entry["pass"]:
            entry["pass"] = False
            entry["first_failure"] = failure

    for g in elems:
        bad = None
        if d.alpha(g, e) != one or d.alpha(e, g) != one:
            bad = {"g": g}
        record("normalization", bad, 1)
    record("sigma_identity", None if all(d.sigma(e).apply(a) == a for a in basis) else {"g": e}, len(basis))

    for s, t, w in itertools.product(elems, repeat=3):
        st, tw = d.op(s, t), d.op(t, w)
        lhs = d.mul(d.alpha(s, t), d.alpha(st, w))
        rhs = d.mul(d.sigma(s).apply(d.alpha(t, w)), d.alpha(s, tw))
        record("cocycle", None if lhs == rhs else {"s": s, "t": t, "w": w}, 1)

    for s, t in itertools.product(elems, repeat=2):
        st = d.op(s, t)
        ast = d.alpha(s, t)
        bad = None
        for a in basis:
            lhs = d.mul(d.sigma(s).apply(d.sigma(t).apply(a)), ast)
            rhs = d.mul(ast, d.sigma(st).apply(a))
            if lhs != rhs:
                bad = {"s": s, "t": t, "a": _fmt(a)}
                break
        record("compatibility", bad, len(basis))

    for g in elems:
        gi = d.inv(g)
        ok = d.alpha(g, gi) == d.sigma(g).apply(d.alpha(gi, g))
        record("inverse_identity", None if ok else {"g": g}, 1)

    if d.ambient is not None:
        amb = d.ambient
        for g in elems:
            bad = None
            for a in basis:
                if amb.u(g) * amb.embed(a) != amb.embed(d.sigma(g).apply(a)) * amb.u(g):
                    bad = {"g": g, "a": _fmt(a)}
                    break
            record("u_commutation", bad, len(basis))
        for s, t in itertools.product(elems, repeat=2):
            ok = amb.u(s) * amb.u(t) == amb.embed(d.alpha(s, t)) * amb.u(d.op(s, t))
            record("u_product", None if ok else {"s": s, "t": t}, 1)

    return {
        "bound": bound,
        "pass": all(c["pass"] for c in checks.values()),
        "checks": checks,
    }


def check_torsion_free(d: CrystallineData, bound: int = DEFAULT_BOUND) -> dict:
    """Torsion-freeness and bijectivity of sigma on the bounded range.

    Over ``Q[z]`` (a domain) torsion-freeness reduces to nonzero alpha values;
    over ``Q^X`` alpha must vanish nowhere. Bijectivity of sigma_g is checked by
    composing with its inverse on the test basis.
    """
    elems = d.elements(bound)
    basis = d.test_basis(bound)
    zero_alpha = []
    for s, t in itertools.product(elems, repeat=2):
        a = d.alpha(s, t)
        if isinstance(a, Poly):
            bad = a.is_zero()
        else:
            bad = any(c == 0 for c in a)
        if bad:
            zero_alpha.append({"s": s, "t": t})
    inverse_pairs = [(g, d.inv(g)) for g in elems]
    alpha_inverse_ok = not any(
        {"s": g, "t": gi} in zero_alpha for g, gi in inverse_pairs
    )
    bijective = []
    for g in elems:
        sg = d.sigma(g)
        inv = sg.inverse()
        ok = all(inv.apply(sg.apply(a)) == a and sg.apply(inv.apply(a)) == a for a in basis)
        if isinstance(sg, Shift):
            structural = "shift z -> z + c has inverse z -> z - c"
        else:
            structural = "induced by a permutation of the point set"
        bijective.append({"g": g, "bijective": ok, "reason": structural})
    return {
        "bound": bound,
        "alpha_inverse_nonzero": alpha_inverse_ok,
        "alpha_all_nonzero": not zero_alpha,
        "zero_alpha": zero_alpha[:10],
        "sigma_bijective": all(b["bijective"] for b in bijective),
        "pass": alpha_inverse_ok and not zero_alpha and all(b["bijective"] for b in bijective),
    }


# --------------------------------------------------------------------------
# the Weyl instance


class _WeylAmbient:
    def u(self, g: int) -> WeylElement:
        return weyl_u(g)

    def embed(self, a: Poly) -> WeylElement:
        return WeylElement.from_poly_in_z(a)


@lru_cache(maxsize=None)
def weyl_alpha(m: int, n: int) -> Poly:
    """``alpha(m, n)``: factor ``u_m u_n = alpha(m, n) u_{m+n}`` in normal form."""
    return factor_neutral(weyl_u(m) * weyl_u(n), m + n)


def weyl_shift_unit() -> Fraction:
    """The constant c with ``x z = (z + c) x``, read off normal forms."""
    z = WeylElement.from_poly_in_z(Poly.z())
    p = factor_neutral(weyl_u(1) * z, 1)
    c = p - Poly.z()
    if c.degree > 0:
        raise AssertionError("u_1 z u_1^-1 is not a shift of z")
    return c.coeffs[0] if c.coeffs else ZERO


WEYL_ATTESTATION = "the first Weyl algebra is simple (classical fact, not re-proved here)"


def weyl_instance() -> CrystallineData:
    c = weyl_shift_unit()
    return CrystallineData(
        base=PolyCoeffRing(),
        group=IntegerGroup(),
        sigma=lambda n: Shift(n * c),
        alpha_fn=weyl_alpha,
        name="weyl",
        ambient=_WeylAmbient(),
        simplicity_attestation=WEYL_ATTESTATION,
    )


def trivial_instance(base=None, group=None) -> CrystallineData:
    """Group-ring data: sigma = id, alpha = 1."""
    base = base or PolyCoeffRing()
    group = group or IntegerGroup()
    if isinstance(base, PolyCoeffRing):
        ident = lambda g: Shift(0)
    else:
        ident = lambda g: PermutationInduced(tuple(range(base.size)))
    return CrystallineData(base, group, ident, lambda s, t: base.one(), name="group-ring")


def function_instance(points: int, perm, group: FiniteGroup | None = None) -> CrystallineData:
    """Skew data over ``Q^X`` for a cyclic group generated by ``perm``."""
    from .groups import make_cyclic

    p = PermutationInduced(tuple(perm))
    k = 1
    q = p
    while not q.is_identity():
        q = q.compose(p)
        k += 1
    group = group or make_cyclic(k)
    base = FunctionRing.on(points)

    def sigma(g):
        out = PermutationInduced(tuple(range(points)))
        for _ in range(g):
            out = out.compose(p)
        return out

    return CrystallineData(base, group, sigma, lambda s, t: base.one(), name="function-skew")


def _generating_action(d: CrystallineData) -> list:
    if isinstance(d.group, IntegerGroup):
        return [d.sigma(1)]
    return [d.sigma(g) for g in d.group.elements()]


def conclude_g_simplicity(d: CrystallineData, require_attestation: bool = True) -> dict:
    """Decide G-simplicity of A_0 and compare with "simple total ring => G-simple A_0"."""
    if require_attestation and d.simplicity_attestation is None:
        raise ValueError("no simplicity attestation for the total ring; pass require_attestation=False")
    gs = is_g_simple(d.base, _generating_action(d))
    plain = is_simple_ring(d.base)
    out = {
        "g_simple": gs.g_simple,
        "g_simple_witness": gs.witness.to_json() if gs.witness is not None else None,
        "g_simple_reason": gs.reason,
        "plain_simple": plain.g_simple,
        "plain_simple_witness": plain.witness.to_json() if plain.witness is not None else None,
        "total_ring_simple_attested": d.simplicity_attestation,
    }
    if d.simplicity_attestation is not None:
        out["consistent_with_simple_implies_g_simple"] = gs.g_simple
        out["evidence_kind"] = "theorem-derived"
        out["clause"] = "simple crystalline graded ring => A_0 is G-simple"
    return out


def bounded_max_commutative_evidence(bound: int = DEFAULT_BOUND) -> dict:
    """Elements of degree ``a + b <= bound`` commuting with ``z`` all lie in ``Q[z]``."""
    monos = [(a, b) for a in range(bound + 1) for b in range(bound + 1 - a)]
    z = WeylElement.from_poly_in_z(Poly.z())
    comms = [z * WeylElement({m: ONE}) - WeylElement({m: ONE}) * z for m in monos]
    keys = sorted({k for c in comms for k in c.terms})
    if keys:
        rows = tuple(tuple(c.terms.get(k, ZERO) for c in comms) for k in keys)
        kernel = nullspace(Matrix(len(keys), len(monos), rows))
    else:
        kernel = tuple(tuple(ONE if i == j else ZERO for i in range(len(monos))) for j in range(len(monos)))
    kernel_space = span(kernel, len(monos))
    neutral = []
    for j in range(bound // 2 + 1):
        zj = WeylElement.from_poly_in_z(Poly((0,) * j + (1,)))
        neutral.append(tuple(zj.terms.get(m, ZERO) for m in monos))
    neutral_space = span(neutral, len(monos))
    return {
        "bound": bound,
        "evidence_kind": "bounded",
        "commutant_dim": kernel_space.dim,
        "neutral_dim": neutral_space.dim,
        "commutant_inside_neutral": kernel_space == neutral_space,
    }


def principal_ideal_sampling(samples: int = 100, seed: int = 0, max_degree: int = 4) -> dict:
    """Random nonconstant principal ideals of Q[z] are never shift-invariant."""
    rng = random.Random(seed)
    shift = Shift(1)
    invariant = []
    for _ in range(samples):
        deg = rng.randint(1, max_degree)
        coeffs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        f = Poly(tuple(Fraction(c) for c in coeffs))
        if is_g_invariant_ideal(PrincipalIdeal(f), [shift]):
            invariant.append(f.to_json())
    return {"evidence": "sampling", "seed": seed, "samples": samples,
            "invariant_count": len(invariant), "invariant_examples": invariant[:3]}


def weyl_report(bound: int = DEFAULT_BOUND, samples: int = 100, seed: int = 0) -> dict:
    d = weyl_instance()
    return {
        "instance": "weyl",
        "sigma_1_of_z": _fmt(d.sigma(1).apply(Poly.z())),
        "alpha": {
            "1,-1": _fmt(d.alpha(1, -1)),
            "-1,1": _fmt(d.alpha(-1, 1)),
            "1,1": _fmt(d.alpha(1, 1)),
        },
        "axioms": check_axioms(d, bound),
        "torsion_free": check_torsion_free(d, bound),
        "g_simplicity": conclude_g_simplicity(d),
        "max_commutative_bounded": bounded_max_commutative_evidence(bound),
        "non_simple_witness": PrincipalIdeal(Poly.z()).to_json(),
        "principal_ideals": principal_ideal_sampling(samples, seed),
    }
