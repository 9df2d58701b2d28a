"""Skew and twisted group rings over ``Q^X`` and their simplicity verdicts.

``build`` realizes ``(a u_g)(b u_h) = a sigma_g(b) alpha(g, h) u_{gh}`` as a
:class:`~graded_workbench.graded.GradedRing` whose degree-``g`` basis is
``e_x u_g`` for the point indicators ``e_x``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import graded as G
from .coeff import FunctionRing, PermutationInduced, is_g_simple, orbits
from .exact import ZERO, Matrix, Subspace, as_rational, format_rational, nullspace, subspace_equal, subspace_intersect
from .groups import FiniteGroup, group_from_json


class SpecError(ValueError):
    """The skew-ring data violates its invariants."""


@dataclass
class SkewGroupRingSpec:
    coefficients: FunctionRing
    group: FiniteGroup
    action: dict  # g -> PermutationInduced
    cocycle: dict | None = None  # (g, h) -> function vector
    name: str = ""

    @property
    def twisted(self) -> bool:
        return self.cocycle is not None and any(
            any(c != 1 for c in v) for v in self.cocycle.values()
        )

    def alpha(self, g: int, h: int) -> tuple:
        if self.cocycle is None:
            return self.coefficients.one()
        return self.cocycle.get((g, h), self.coefficients.one())

    def sigma(self, g: int) -> PermutationInduced:
        return self.action[g]

    def to_json(self) -> dict:
        out = {
            "coefficients": self.coefficients.to_json(),
            "group": self.group.to_json(),
            "action": [self.action[g].to_json()["perm"] for g in self.group.elements()],
        }
        if self.cocycle is not None:
            out["cocycle"] = [
                [[format_rational(c) for c in self.alpha(g, h)] for h in self.group.elements()]
                for g in self.group.elements()
            ]
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj) -> "SkewGroupRingSpec":
        coeffs = obj.get("coefficients", {"ring": "rationals"})
        if coeffs.get("ring") == "rationals":
            ring = FunctionRing((0,))
        elif coeffs.get("ring") == "functions":
            ring = FunctionRing(tuple(coeffs["points"]))
        else:
            raise SpecError("skew group rings need function-ring or rational coefficients")
        group = group_from_json(obj["group"])
        if not isinstance(group, FiniteGroup):
            raise SpecError("skew group rings need a finite group")
        raw = obj.get("action")
        if raw is None:
            raw = [list(range(ring.size))] * group.order
        if len(raw) != group.order:
            raise SpecError(f"action lists {len(raw)} permutations for a group of order {group.order}")
        action = {}
        for g, p in enumerate(raw):
            if isinstance(p, dict):
                p = p["perm"]
            if len(p) != ring.size:
                raise SpecError(f"action[{g}] has length {len(p)}, expected {ring.size}")
            action[g] = PermutationInduced(tuple(p))
        cocycle = None
        if obj.get("cocycle") is not None:
            cocycle = {}
            for g, row in enumerate(obj["cocycle"]):
                for h, val in enumerate(row):
                    if not isinstance(val, list):
                        val = [val] * ring.size
                    cocycle[(g, h)] = tuple(as_rational(c) for c in val)
        return cls(ring, group, action, cocycle, obj.get("name", ""))


def spec_violations(spec: SkewGroupRingSpec) -> list:
    out = []
    grp = spec.group
    e = grp.identity
    if set(spec.action) != set(grp.elements()):
        return ["action must assign an automorphism to every group element"]
    if not spec.action[e].is_identity():
        out.append("action: sigma_e is not the identity")
    for g, h in itertools.product(grp.elements(), repeat=2):
        if spec.action[g].compose(spec.action[h]) != spec.action[grp.op(g, h)]:
            out.append(f"action: sigma_{g} sigma_{h} != sigma_{grp.op(g, h)}")
    if spec.cocycle is not None:
        one = spec.coefficients.one()
        mul = spec.coefficients.mul
        for (g, h), v in spec.cocycle.items():
            if any(c == 0 for c in v):
                out.append(f"cocycle: alpha({g},{h}) is not invertible")
        for g in grp.elements():
            if spec.alpha(g, e) != one or spec.alpha(e, g) != one:
                out.append(f"cocycle: alpha not normalized at {g}")
        for s, t, w in itertools.product(grp.elements(), repeat=3):
            lhs = mul(spec.alpha(s, t), spec.alpha(grp.op(s, t), w))
            rhs = mul(spec.action[s].apply(spec.alpha(t, w)), spec.alpha(s, grp.op(t, w)))
            if lhs != rhs:
                out.append(f"cocycle identity fails at ({s}, {t}, {w})")
    return out


def build(spec: SkewGroupRingSpec) -> G.GradedRing:
    problems = spec_violations(spec)
    if problems:
        raise SpecError("; ".join(problems[:4]))
    grp = spec.group
    ring = spec.coefficients
    labels = {g: [f"e{x}u{g}" for x in ring.points] for g in grp.elements()}
    indicators = [ring.indicator([y]) for y in range(ring.size)]

    def product(g, x, h, y):
        moved = spec.action[g].apply(indicators[y])
        alpha = spec.alpha(g, h)
        out = [ZERO] * ring.size
        if moved[x]:
            out[x] = moved[x] * alpha[x]
        return out

    return G.GradedRing.from_basis_product(grp, labels, product, ring.one(), spec.name)


def element(spec: SkewGroupRingSpec, r: G.GradedRing, parts: dict) -> tuple:
    """``sum_g f_g u_g`` from a map ``g -> function vector``."""
    out = [ZERO] * r.dim
    for g, f in parts.items():
        for x, c in enumerate(f):
            out[r.offsets[g] + x] = as_rational(c)
    return tuple(out)


def augmentation(spec: SkewGroupRingSpec, r: G.GradedRing, x) -> tuple:
    """``sum_g a_g u_g -> sum_g a_g``; only defined without a twisting cocycle."""
    if spec.twisted:
        raise SpecError("augmentation is defined for skew group rings (trivial cocycle) only")
    n = spec.coefficients.size
    out = [ZERO] * n
    for g in spec.group.elements():
        for k in range(n):
            out[k] += x[r.offsets[g] + k]
    return tuple(out)


@dataclass(frozen=True)
class CommutationWitness:
    s: int
    r_s: tuple

    def to_json(self) -> dict:
        return {"s": self.s, "r_s": [format_rational(c) for c in self.r_s]}


def find_commutation_witness(spec: SkewGroupRingSpec) -> CommutationWitness | None:
    """First ``s != e`` and nonzero ``r`` with ``r sigma_s(a) = r a`` for all coefficients ``a``."""
    ring = spec.coefficients
    n = ring.size
    indicators = [ring.indicator([y]) for y in range(n)]
    for s in spec.group.elements():
        if s == spec.group.identity:
            continue
        rows = []
        for a in indicators:
            diff = [p - q for p, q in zip(spec.action[s].apply(a), a)]
            # pointwise product r * diff = 0: one equation per point
            for x in range(n):
                rows.append(tuple(diff[x] if k == x else ZERO for k in range(n)))
        kernel = nullspace(Matrix(len(rows), n, tuple(rows)))
        if kernel:
            return CommutationWitness(s, kernel[0])
    return None


def witness_generator(spec: SkewGroupRingSpec, r: G.GradedRing, w: CommutationWitness) -> tuple:
    """``r_s - r_s u_s``."""
    e = spec.group.identity
    return element(spec, r, {e: w.r_s, w.s: tuple(-c for c in w.r_s)})


def witness_ideal(spec: SkewGroupRingSpec, r: G.GradedRing, w: CommutationWitness):
    """Closure of ``r_s - r_s u_s``; returns ``(ideal, avoids_neutral)``."""
    if spec.twisted:
        raise SpecError("witness ideals are constructed for skew group rings only")
    ideal = G.ideal_closure(r, [witness_generator(spec, r, w)])
    meet = subspace_intersect(ideal, r.component_subspace(spec.group.identity))
    return ideal, meet.is_zero()


def invariant_subset_ideal(spec: SkewGroupRingSpec, r: G.GradedRing, subset) -> Subspace:
    """``{sum f_g u_g : every f_g vanishes outside subset}``."""
    vecs = [r.basis_vector(g, x) for g in spec.group.elements() for x in sorted(subset)]
    return G.span(vecs, r.dim)


def is_action_free(spec: SkewGroupRingSpec) -> bool:
    """No ``s != e`` fixes a point (ring-theoretically: no commutation witness)."""
    e = spec.group.identity
    return all(
        all(p != x for x, p in enumerate(spec.action[s].perm))
        for s in spec.group.elements() if s != e
    )


def is_action_transitive(spec: SkewGroupRingSpec) -> bool:
    return len(orbits(spec.coefficients.size, spec.action.values())) == 1


def verdict_max_commutative(spec: SkewGroupRingSpec, r: G.GradedRing | None = None) -> bool:
    r = r or build(spec)
    e = spec.group.identity
    return subspace_equal(G.neutral_commutant(r), r.component_subspace(e))


def verdict_g_simple(spec: SkewGroupRingSpec):
    return is_g_simple(spec.coefficients, list(spec.action.values()))


@dataclass
class SimplicityReport:
    simple: bool | None
    max_commutative: bool
    g_simple: bool
    evidence_kind: str  # "theorem-derived" | "exact-certificate" | "sampling"
    clause: str
    witness: dict | None = None
    sampling: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "simple": self.simple,
            "max_commutative": self.max_commutative,
            "g_simple": self.g_simple,
            "evidence_kind": self.evidence_kind,
            "clause": self.clause,
            "witness": self.witness,
            "sampling": self.sampling,
        }


def _closure_evidence(r: G.GradedRing, samples: int, seed: int) -> dict:
    rng = random.Random(seed)
    full = 0
    proper = None
    for _ in range(samples):
        x = G.random_element(r, rng)
        ideal = G.ideal_closure(r, [x])
        if ideal.is_full():
            full += 1
        elif proper is None:
            proper = (x, ideal)
    return {"evidence": "sampling", "seed": seed, "samples": samples, "full_closures": full, "_proper": proper}


SKEW_THEOREM = "skew group ring simple iff R_e maximal commutative and G-simple"


def verdict_simple(spec: SkewGroupRingSpec, r: G.GradedRing | None = None,
                   samples: int = 50, seed: int = G.DEFAULT_SEED) -> SimplicityReport:
    r = r or build(spec)
    maxc = verdict_max_commutative(spec, r)
    gs = verdict_g_simple(spec)
    if not spec.twisted:
        simple = maxc and gs.g_simple
        if simple:
            ev = _closure_evidence(r, samples, seed)
            ev.pop("_proper")
            return SimplicityReport(True, maxc, gs.g_simple, "theorem-derived", SKEW_THEOREM, None, ev)
        if not maxc:
            w = find_commutation_witness(spec)
            ideal, avoids = witness_ideal(spec, r, w)
            witness = {
                "branch": "not maximal commutative",
                "commutation_witness": w.to_json(),
                "generator": G.GradedElement.from_vector(r, witness_generator(spec, r, w)).to_json(),
                "ideal": G.subspace_json(r, ideal),
                "verified_proper_nonzero": (not ideal.is_zero()) and (not ideal.is_full()),
                "meets_neutral_trivially": avoids,
            }
        else:
            subset = gs.witness.subset
            ideal = invariant_subset_ideal(spec, r, subset)
            closed = G.ideal_closure(r, ideal.basis)
            witness = {
                "branch": "not G-simple",
                "invariant_subset": sorted(subset),
                "ideal": G.subspace_json(r, ideal),
                "verified_proper_nonzero": subspace_equal(closed, ideal) and not ideal.is_zero() and not ideal.is_full(),
            }
        return SimplicityReport(False, maxc, gs.g_simple, "theorem-derived", SKEW_THEOREM, witness)

    # twisted: the skew-ring theorem does not apply
    if not gs.g_simple:
        subset = gs.witness.subset
        ideal = invariant_subset_ideal(spec, r, subset)
        closed = G.ideal_closure(r, ideal.basis)
        witness = {
            "branch": "not G-simple",
            "invariant_subset": sorted(subset),
            "ideal": G.subspace_json(r, ideal),
            "verified_proper_nonzero": subspace_equal(closed, ideal) and not ideal.is_full(),
        }
        return SimplicityReport(False, maxc, False, "exact-certificate",
                                "invariant subset yields a proper ideal", witness)
    field_check = two_dim_field_check(r)
    ev = _closure_evidence(r, samples, seed)
    proper = ev.pop("_proper")
    if proper is not None:
        x, ideal = proper
        witness = {"branch": "sampled proper ideal", "generator": G.GradedElement.from_vector(r, x).to_json(),
                   "ideal": G.subspace_json(r, ideal), "verified_proper_nonzero": True}
        return SimplicityReport(False, maxc, True, "exact-certificate", "explicit proper ideal", witness, ev)
    if field_check is not None:
        return SimplicityReport(field_check["is_field"], maxc, True, "exact-certificate",
                                "two-dimensional commutative algebra with anisotropic norm form is a field",
                                {"norm_form": field_check}, ev)
    return SimplicityReport(True, maxc, True, "sampling", "all sampled closures are the whole ring", None, ev)


def two_dim_field_check(r: G.GradedRing):
    """Exact field test for a commutative 2-dimensional algebra via its norm form.

    The norm ``det(L_x)`` is a binary quadratic form; the algebra is a field iff
    the form has no nontrivial rational zero, i.e. its discriminant is not a
    rational square. Returns None outside this setting.
    """
    if r.dim != 2:
        return None
    b0, b1 = G.all_basis(r)
    if r.mul(b0, b1) != r.mul(b1, b0):
        return None
    from .exact import MultiPoly, sym_det

    cols = []
    for b in (b0, b1):
        col = [MultiPoly(2), MultiPoly(2)]
        for v, a in enumerate((b0, b1)):
            prod = r.mul(a, b)
            for i in range(2):
                if prod[i]:
                    col[i] = col[i] + MultiPoly.var(2, v) * prod[i]
        cols.append(col)
    norm = sym_det([[cols[j][i] for j in range(2)] for i in range(2)])
    a = norm.terms.get((2, 0), ZERO)
    b = norm.terms.get((1, 1), ZERO)
    c = norm.terms.get((0, 2), ZERO)
    disc = b * b - 4 * a * c
    return {
        "a": format_rational(a), "b": format_rational(b), "c": format_rational(c),
        "discriminant": format_rational(disc),
        "is_field": not _is_rational_square(disc),
    }


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    from math import isqrt

    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


# --------------------------------------------------------------------------
# enumeration of permutation actions


def _generators(group: FiniteGroup) -> list:
    gens = []
    reached = {group.identity}
    for g in group.elements():
        if g in reached:
            continue
        gens.append(g)
        frontier = list(reached)
        reached = set(reached)
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = group.op(x, s)
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
    return gens


def _perm_power_is_identity(p, k) -> bool:
    n = len(p)
    q = list(range(n))
    for _ in range(k):
        q = [p[i] for i in q]
    return q == list(range(n))


def _extend(group: FiniteGroup, gens, images, n):
    """Extend generator images to a homomorphism into ``Aut(Q^n)`` or return None."""
    e = group.identity
    ident = PermutationInduced(tuple(range(n)))
    action = {e: ident}
    frontier = [e]
    while frontier:
        g = frontier.pop()
        for s, ps in zip(gens, images):
            gs = group.op(g, s)
            img = action[g].compose(ps)
            if gs in action:
                if action[gs] != img:
                    return None
            else:
                action[gs] = img
                frontier.append(gs)
    for g, h in itertools.product(group.elements(), repeat=2):
        if action[g].compose(action[h]) != action[group.op(g, h)]:
            return None
    return action


def _canonical(action, group, n):
    best = None
    for tau in itertools.permutations(range(n)):
        inv = [0] * n
        for i, t in enumerate(tau):
            inv[t] = i
        # relabel x -> tau(x): p' = tau p tau^-1
        key = tuple(tuple(tau[action[g].perm[inv[x]]] for x in range(n)) for g in group.elements())
        if best is None or key < best:
            best = key
    return best


def enumerate_actions(group: FiniteGroup, n: int) -> list:
    """All actions of ``group`` on ``Q^n`` by point permutations, one per relabeling class."""
    gens = _generators(group)
    candidates = []
    for s in gens:
        k = group.order_of(s)
        candidates.append([PermutationInduced(p) for p in itertools.permutations(range(n))
                           if _perm_power_is_identity(p, k)])
    seen = set()
    out = []
    for images in itertools.product(*candidates):
        action = _extend(group, gens, images, n)
        if action is None:
            continue
        key = _canonical(action, group, n)
        if key in seen:
            continue
        seen.add(key)
        out.append({g: PermutationInduced(key[g]) for g in group.elements()})
    return out


def function_skew_spec(group: FiniteGroup, perms, name: str = "", cocycle=None) -> SkewGroupRingSpec:
    """Skew group ring ``Q^X x| G`` with ``perms[g]`` inducing ``sigma_g``."""
    if isinstance(perms, dict):
        perms = [perms[g] for g in group.elements()]
    n = len(perms[0].perm if isinstance(perms[0], PermutationInduced) else perms[0])
    action = {g: p if isinstance(p, PermutationInduced) else PermutationInduced(tuple(p)) for g, p in enumerate(perms)}
    return SkewGroupRingSpec(FunctionRing.on(n), group, action, cocycle, name)


def rational_twisted_spec(group: FiniteGroup, alpha: dict, name: str = "") -> SkewGroupRingSpec:
    """``Q x|^alpha G`` with trivial action and scalar cocycle values ``alpha[(g, h)]``."""
    ring = FunctionRing((0,))
    action = {g: PermutationInduced((0,)) for g in group.elements()}
    cocycle = {(g, h): (as_rational(alpha.get((g, h), 1)),) for g in group.elements() for h in group.elements()}
    return SkewGroupRingSpec(ring, group, action, cocycle, name)
