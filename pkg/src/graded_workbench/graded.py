"""Finite-dimensional group-graded rings given by structure constants.

A :class:`GradedRing` stores one global coordinate space: the basis of every
homogeneous component, concatenated in group-element order. Ring elements are
tuples of Fractions in those coordinates; :class:`GradedElement` is the
per-degree view used at API boundaries.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .exact import (
    ONE,
    ZERO,
    DimensionError,
    EchelonBuilder,
    Matrix,
    MultiPoly,
    Poly,
    SYM_DET_MAX,
    Subspace,
    as_rational,
    det,
    format_rational,
    full_subspace,
    lin_comb,
    nullspace,
    solve,
    span,
    subspace_contains,
    subspace_equal,
    subspace_intersect,
    sym_det,
    to_integer_row,
    unit_vector,
    zeros,
)
from .groups import FiniteGroup, group_from_json

DEFAULT_SEED = 20240101


class GradingError(ValueError):
    """Raised when a requested construction does not exist (e.g. no partition of unity)."""


class NotInCommutant(GradingError):
    pass


# --------------------------------------------------------------------------
# presentation


class GradedRing:
    """Graded ring ``R = sum_g R_g`` over a finite group with explicit basis products.

    ``products[i][j]`` is the sparse global vector ``((k, c), ...)`` of the
    product of basis elements ``i`` and ``j``.
    """

    def __init__(self, group: FiniteGroup, labels: dict, products, unity, name: str = ""):
        self.group = group
        self.name = name
        self.labels = {g: tuple(labels.get(g, ())) for g in group.elements()}
        self.offsets = {}
        self.grade = []
        pos = 0
        for g in group.elements():
            self.offsets[g] = pos
            pos += len(self.labels[g])
            self.grade.extend([g] * len(self.labels[g]))
        self.dim = pos
        self.products = tuple(tuple(tuple(p) for p in row) for row in products)
        self.unity = tuple(as_rational(c) for c in unity)
        if len(self.products) != self.dim or any(len(r) != self.dim for r in self.products):
            raise DimensionError("product table does not match the total dimension")
        if len(self.unity) != self.dim:
            raise DimensionError("unity has the wrong length")
        self._left_int = None
        self._right_int = None

    # -- construction helpers

    @classmethod
    def from_basis_product(cls, group, labels, product, unity_local, name=""):
        """Build from ``product(g, i, h, j) -> local coordinates in component g*h``."""
        labels = {g: tuple(labels.get(g, ())) for g in group.elements()}
        offsets, pos = {}, 0
        for g in group.elements():
            offsets[g] = pos
            pos += len(labels[g])
        dim = pos
        basis = [(g, i) for g in group.elements() for i in range(len(labels[g]))]
        products = []
        for g, i in basis:
            row = []
            for h, j in basis:
                gh = group.op(g, h)
                local = product(g, i, h, j)
                if len(local) != len(labels[gh]):
                    raise DimensionError(f"product of ({g},{i}) and ({h},{j}) has wrong length")
                row.append(tuple((offsets[gh] + k, as_rational(c)) for k, c in enumerate(local) if c))
            products.append(row)
        e = group.identity
        unity = [ZERO] * dim
        for k, c in enumerate(unity_local):
            unity[offsets[e] + k] = as_rational(c)
        return cls(group, labels, products, unity, name)

    @classmethod
    def from_json(cls, obj) -> "GradedRing":
        group = group_from_json(obj["group"])
        if not isinstance(group, FiniteGroup):
            raise GradingError("graded presentations need a finite grading group")
        comps = obj["components"]
        labels = {}
        for key, names in comps.items():
            g = group.element_from_label(_parse_element_key(key))
            labels[g] = tuple(str(n) for n in names)
        for g in group.elements():
            labels.setdefault(g, ())
        table = {}
        for k, entry in enumerate(obj.get("structure", [])):
            g = group.element_from_label(entry["g"])
            h = group.element_from_label(entry["h"])
            i, j = int(entry["i"]), int(entry["j"])
            if not (0 <= i < len(labels[g]) and 0 <= j < len(labels[h])):
                raise GradingError(f"structure[{k}]: basis index out of range")
            coeffs = [as_rational(c) for c in entry["coeffs"]]
            table[(g, i, h, j)] = coeffs
        def product(g, i, h, j):
            gh = group.op(g, h)
            return table.get((g, i, h, j), [ZERO] * len(labels[gh]))
        return cls.from_basis_product(group, labels, product, obj["unity"], obj.get("name", ""))

    def to_json(self) -> dict:
        structure = []
        for a in range(self.dim):
            for b in range(self.dim):
                prod = self.products[a][b]
                if not prod:
                    continue
                g, h = self.grade[a], self.grade[b]
                gh = self.group.op(g, h)
                local = [ZERO] * len(self.labels[gh])
                for k, c in prod:
                    local[k - self.offsets[gh]] = c
                structure.append({
                    "g": g, "h": h,
                    "i": a - self.offsets[g], "j": b - self.offsets[h],
                    "coeffs": [format_rational(c) for c in local],
                })
        e = self.group.identity
        return {
            "group": self.group.to_json(),
            "components": {str(g): list(self.labels[g]) for g in self.group.elements()},
            "structure": structure,
            "unity": [format_rational(c) for c in self.component_coords(self.unity, e)],
        }

    # -- coordinates

    def basis_vector(self, g: int, i: int) -> tuple:
        return unit_vector(self.dim, self.offsets[g] + i)

    def basis_index(self, label: str) -> int:
        for g in self.group.elements():
            if label in self.labels[g]:
                return self.offsets[g] + self.labels[g].index(label)
        raise KeyError(label)

    def component_range(self, g: int) -> range:
        return range(self.offsets[g], self.offsets[g] + len(self.labels[g]))

    def component_basis(self, g: int) -> list:
        return [unit_vector(self.dim, k) for k in self.component_range(g)]

    def component_subspace(self, g: int) -> Subspace:
        return span(self.component_basis(g), self.dim)

    def component_coords(self, x, g: int) -> tuple:
        return tuple(x[k] for k in self.component_range(g))

    def embed(self, g: int, local) -> tuple:
        out = [ZERO] * self.dim
        for k, c in zip(self.component_range(g), local):
            out[k] = as_rational(c)
        return tuple(out)

    def support(self, x) -> list:
        return [g for g in self.group.elements() if any(x[k] for k in self.component_range(g))]

    def homogeneous_part(self, x, g: int) -> tuple:
        r = self.component_range(g)
        return tuple(c if k in r else ZERO for k, c in enumerate(x))

    def one(self) -> tuple:
        return self.unity

    def zero(self) -> tuple:
        return zeros(self.dim)

    # -- arithmetic

    def mul(self, x, y) -> tuple:
        out = [ZERO] * self.dim
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.products[i]
            for j, b in ynz:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return tuple(out)

    def mul_all(self, *xs) -> tuple:
        acc = xs[0]
        for x in xs[1:]:
            acc = self.mul(acc, x)
        return acc

    def left_matrix(self, x) -> Matrix:
        """Matrix of ``y -> x y``."""
        cols = [self.mul(x, unit_vector(self.dim, j)) for j in range(self.dim)]
        return Matrix(self.dim, self.dim, tuple(tuple(c[i] for c in cols) for i in range(self.dim)))

    def right_matrix(self, x) -> Matrix:
        cols = [self.mul(unit_vector(self.dim, j), x) for j in range(self.dim)]
        return Matrix(self.dim, self.dim, tuple(tuple(c[i] for c in cols) for i in range(self.dim)))

    def _basis_int_matrices(self):
        if self._left_int is None:
            left, right = [], []
            n = self.dim
            for b in range(n):
                lcols = [[ZERO] * n for _ in range(n)]
                rcols = [[ZERO] * n for _ in range(n)]
                for j in range(n):
                    for k, c in self.products[b][j]:
                        lcols[k][j] += c
                    for k, c in self.products[j][b]:
                        rcols[k][j] += c
                left.append(_integer_matrix(lcols))
                right.append(_integer_matrix(rcols))
            self._left_int, self._right_int = left, right
        return self._left_int, self._right_int

    def __repr__(self):
        dims = {g: len(self.labels[g]) for g in self.group.elements()}
        return f"GradedRing({self.name or 'unnamed'}, dims={dims})"


def _integer_matrix(rows):
    den = 1
    for r in rows:
        for c in r:
            if c and c.denominator != 1:
                den = den * c.denominator // math.gcd(den, c.denominator)
    return [[int(c * den) for c in r] for r in rows]


def _parse_element_key(key):
    if isinstance(key, str):
        key = key.strip()
        if key.startswith("("):
            return tuple(int(p) for p in key.strip("()").split(",") if p.strip())
        try:
            return int(key)
        except ValueError:
            return key
    return key


@dataclass
class GradedElement:
    """Per-degree coordinates; zero components are dropped."""

    parts: dict = field(default_factory=dict)

    @classmethod
    def from_vector(cls, r: GradedRing, x) -> "GradedElement":
        return cls({g: r.component_coords(x, g) for g in r.support(x)})

    def vector(self, r: GradedRing) -> tuple:
        out = [ZERO] * r.dim
        for g, local in self.parts.items():
            if len(local) != len(r.labels[g]):
                raise DimensionError(f"component {g} expects {len(r.labels[g])} coordinates")
            for k, c in zip(r.component_range(g), local):
                out[k] = as_rational(c)
        return tuple(out)

    def support(self) -> list:
        return sorted(g for g, v in self.parts.items() if any(v))

    def to_json(self) -> dict:
        return {str(g): [format_rational(c) for c in v] for g, v in sorted(self.parts.items()) if any(v)}

    @classmethod
    def from_json(cls, obj) -> "GradedElement":
        return cls({int(g): tuple(as_rational(c) for c in v) for g, v in obj.items()})


def _as_vector(r: GradedRing, x):
    if isinstance(x, GradedElement):
        return x.vector(r)
    return tuple(as_rational(c) for c in x)


# --------------------------------------------------------------------------
# validation and strong gradation


def validate_graded(r: GradedRing) -> list:
    """Exhaustive well-formedness, degree, associativity and unit checks."""
    out = []
    n = r.dim
    for a in range(n):
        for b in range(n):
            gh = r.group.op(r.grade[a], r.grade[b])
            for k, _ in r.products[a][b]:
                if not (0 <= k < n) or r.grade[k] != gh:
                    out.append(f"degree: product of basis {a} and {b} leaves component {gh}")
                    break
    if out:
        return out
    if any(r.unity[k] for k in range(n) if r.grade[k] != r.group.identity):
        out.append("unity: has components outside the neutral degree")
    for k in range(n):
        ek = unit_vector(n, k)
        if r.mul(r.unity, ek) != ek or r.mul(ek, r.unity) != ek:
            out.append(f"unity: not a two-sided identity on basis element {k}")
    basis = [unit_vector(n, k) for k in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        ab = r.mul(basis[a], basis[b])
        for c in range(n):
            lhs = r.mul(ab, basis[c])
            rhs = r.mul(basis[a], r.mul(basis[b], basis[c]))
            if lhs != rhs:
                out.append(f"associativity fails on basis triple ({a}, {b}, {c})")
    return out


@dataclass
class StrongGradation:
    strongly_graded: bool
    certificate: dict

    def __bool__(self):
        return self.strongly_graded


def is_strongly_graded(r: GradedRing) -> StrongGradation:
    """For every (g, h): span(R_g R_h) == R_{gh}; the certificate records the dimensions."""
    cert = {}
    ok = True
    for g, h in itertools.product(r.group.elements(), repeat=2):
        gh = r.group.op(g, h)
        prods = [r.mul(a, b) for a in r.component_basis(g) for b in r.component_basis(h)]
        got = span(prods, r.dim)
        want = r.component_subspace(gh)
        equal = subspace_equal(got, want)
        cert[(g, h)] = {"product_dim": got.dim, "target_dim": want.dim, "equal": equal}
        ok = ok and equal
    return StrongGradation(ok, cert)


# --------------------------------------------------------------------------
# partition of unity and canonical action


@dataclass
class PartitionOfUnity:
    g: int
    pairs: list  # (a in R_g, b in R_{g^-1}) global vectors

    @property
    def n(self) -> int:
        return len(self.pairs)

    def total(self, r: GradedRing) -> tuple:
        acc = r.zero()
        for a, b in self.pairs:
            acc = tuple(x + y for x, y in zip(acc, r.mul(a, b)))
        return acc

    def verify(self, r: GradedRing) -> bool:
        ginv = r.group.inv(self.g)
        degrees_ok = all(
            set(r.support(a)) <= {self.g} and set(r.support(b)) <= {ginv} for a, b in self.pairs
        )
        return degrees_ok and self.total(r) == r.unity

    def to_json(self, r: GradedRing) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "pairs": [[GradedElement.from_vector(r, a).to_json(), GradedElement.from_vector(r, b).to_json()]
                      for a, b in self.pairs],
        }


def partition_of_unity(r: GradedRing, g: int, variant: int = 0) -> PartitionOfUnity:
    """Solve ``1 = sum c_ij a_i b_j`` over basis products of R_g x R_{g^-1}.

    ``variant`` permutes the unknowns, which changes which particular solution
    the solver returns; used to obtain a second certificate.
    """
    ginv = r.group.inv(g)
    a_idx = list(r.component_range(g))
    b_idx = list(r.component_range(ginv))
    unknowns = [(i, j) for i in a_idx for j in b_idx]
    if variant:
        unknowns = unknowns[::-1]
    if not unknowns:
        raise GradingError(f"component {g} or its inverse is empty; no partition of unity")
    cols = [r.products[i][j] for i, j in unknowns]
    rows = []
    for k in range(r.dim):
        rows.append(tuple(sum((c for kk, c in col if kk == k), ZERO) for col in cols))
    sol = solve(Matrix(r.dim, len(unknowns), tuple(rows)), r.unity)
    if sol is None:
        raise GradingError(f"1 is not in R_{g} R_{ginv}: not strongly graded at {g}")
    grouped = {}
    for (i, j), c in zip(unknowns, sol):
        if c:
            grouped.setdefault(i, [ZERO] * r.dim)[j] += c
    pairs = [(unit_vector(r.dim, i), tuple(b)) for i, b in sorted(grouped.items())]
    return PartitionOfUnity(g, pairs)


def commutes_with(r: GradedRing, x, ys) -> bool:
    return all(r.mul(x, y) == r.mul(y, x) for y in ys)


def commutant(r: GradedRing, generators) -> Subspace:
    """``C_R(S)`` for ``S`` given by generating elements: kernel of all ``L_v - R_v``."""
    gens = [_as_vector(r, v) for v in generators]
    if not gens:
        return full_subspace(r.dim)
    rows = []
    for v in gens:
        lm = r.left_matrix(v)
        rm = r.right_matrix(v)
        for i in range(r.dim):
            rows.append(tuple(a - b for a, b in zip(lm.rows[i], rm.rows[i])))
    return span(nullspace(Matrix(len(rows), r.dim, tuple(rows))), r.dim)


def all_basis(r: GradedRing) -> list:
    return [unit_vector(r.dim, k) for k in range(r.dim)]


def center(r: GradedRing) -> Subspace:
    return commutant(r, all_basis(r))


def neutral_commutant(r: GradedRing) -> Subspace:
    """``C_R(R_e)``."""
    return commutant(r, r.component_basis(r.group.identity))


def center_of_neutral(r: GradedRing) -> Subspace:
    """``Z(R_e) = R_e ∩ C_R(R_e)``."""
    return subspace_intersect(r.component_subspace(r.group.identity), neutral_commutant(r))


def commutant_of_center_of_neutral(r: GradedRing) -> Subspace:
    """``C_R(Z(R_e))``."""
    return commutant(r, center_of_neutral(r).basis)


def canonical_action(r: GradedRing, g: int, lam, pou: PartitionOfUnity | None = None, check: bool = True):
    """``sigma_g(lam) = sum a_i lam b_i`` for ``lam`` in ``C_R(R_e)``.

    Returns the same kind of object it was given (vector or GradedElement).
    """
    as_element = isinstance(lam, GradedElement)
    x = _as_vector(r, lam)
    if check and not commutes_with(r, x, r.component_basis(r.group.identity)):
        raise NotInCommutant("argument does not commute with the neutral component")
    if pou is None:
        pou = partition_of_unity(r, g)
    acc = [ZERO] * r.dim
    for a, b in pou.pairs:
        t = r.mul(r.mul(a, x), b)
        for k, c in enumerate(t):
            if c:
                acc[k] += c
    out = tuple(acc)
    return GradedElement.from_vector(r, out) if as_element else out


def image_subspace(r: GradedRing, fn, s: Subspace) -> Subspace:
    return span([fn(b) for b in s.basis], r.dim)


def verify_canonical_action_properties(r: GradedRing) -> dict:
    """Check the three canonical-action properties exactly.

    (i)   r_g lam = sigma_g(lam) r_g for every basis r_g and lam in a basis of C_R(R_e),
          plus closure of C_R(R_e) and Z(R_e) under sigma_g;
    (ii)  sigma_g sigma_h = sigma_gh, sigma_g multiplicative and unital, bijective on
          C_R(R_e) and Z(R_e), independent of the partition of unity;
    (iii) the fixed subspace of C_R(R_e) equals Z(R).
    """
    failures = []
    grp = r.group
    comm = neutral_commutant(r)
    zre = center_of_neutral(r)
    pous = {g: partition_of_unity(r, g) for g in grp.elements()}

    def sigma(g, x):
        return canonical_action(r, g, x, pous[g], check=False)

    images = {g: [sigma(g, lam) for lam in comm.basis] for g in grp.elements()}

    # (i)
    ok_i = True
    for g in grp.elements():
        for rg in r.component_basis(g):
            for lam, s in zip(comm.basis, images[g]):
                if r.mul(rg, lam) != r.mul(s, rg):
                    ok_i = False
                    failures.append(f"(i) r_g lam != sigma_g(lam) r_g for g={g}")
                    break
        if not all(subspace_contains(comm, s) for s in images[g]):
            ok_i = False
            failures.append(f"(i) sigma_{g} leaves C_R(R_e)")
        if not all(subspace_contains(zre, sigma(g, z)) for z in zre.basis):
            ok_i = False
            failures.append(f"(i) sigma_{g} leaves Z(R_e)")

    # (ii)
    ok_ii = True
    for g in grp.elements():
        try:
            alt = partition_of_unity(r, g, variant=1)
        except GradingError:
            alt = None
        if alt is not None and [sigma(g, lam) for lam in comm.basis] != [
            canonical_action(r, g, lam, alt, check=False) for lam in comm.basis
        ]:
            ok_ii = False
            failures.append(f"(ii) sigma_{g} depends on the partition of unity")
    for g, h in itertools.product(grp.elements(), repeat=2):
        gh = grp.op(g, h)
        for lam in comm.basis:
            if sigma(g, sigma(h, lam)) != sigma(gh, lam):
                ok_ii = False
                failures.append(f"(ii) sigma_{g} sigma_{h} != sigma_{gh}")
                break
    for g in grp.elements():
        if sigma(g, r.unity) != r.unity:
            ok_ii = False
            failures.append(f"(ii) sigma_{g}(1) != 1")
        for lam, mu in itertools.product(comm.basis, repeat=2):
            if sigma(g, r.mul(lam, mu)) != r.mul(sigma(g, lam), sigma(g, mu)):
                ok_ii = False
                failures.append(f"(ii) sigma_{g} not multiplicative")
                break
        if not subspace_equal(image_subspace(r, lambda x: sigma(g, x), comm), comm):
            ok_ii = False
            failures.append(f"(ii) sigma_{g} not onto C_R(R_e)")
        if not subspace_equal(image_subspace(r, lambda x: sigma(g, x), zre), zre):
            ok_ii = False
            failures.append(f"(ii) sigma_{g} not onto Z(R_e)")

    # (iii)
    fixed = fixed_subspace(r, comm, images)
    z = center(r)
    ok_iii = subspace_equal(fixed, z)
    if not ok_iii:
        failures.append("(iii) fixed subspace of C_R(R_e) differs from Z(R)")

    return {
        "i_relation": ok_i,
        "ii_action": ok_ii,
        "iii_fixed_is_center": ok_iii,
        "commutant_dim": comm.dim,
        "center_of_neutral_dim": zre.dim,
        "center_dim": z.dim,
        "fixed_dim": fixed.dim,
        "failures": failures,
    }


def fixed_subspace(r: GradedRing, comm: Subspace, images: dict) -> Subspace:
    """Vectors of ``comm`` fixed by every sigma_g; ``images[g]`` are images of comm.basis."""
    k = comm.dim
    if k == 0:
        return comm
    rows = []
    for g, imgs in images.items():
        diffs = [tuple(a - b for a, b in zip(s, lam)) for s, lam in zip(imgs, comm.basis)]
        for i in range(r.dim):
            rows.append(tuple(d[i] for d in diffs))
    kernel = nullspace(Matrix(len(rows), k, tuple(rows)))
    return span([lin_comb(c, comm.basis, r.dim) for c in kernel], r.dim)


# --------------------------------------------------------------------------
# ideals


def ideal_closure(r: GradedRing, generators) -> Subspace:
    """Smallest two-sided ideal containing ``generators``.

    Worklist over integer-scaled vectors: each new basis vector is multiplied on
    both sides by every ring basis element; residuals that enlarge the span are
    queued. Terminates since the dimension grows with every queued vector.
    """
    n = r.dim
    left, right = r._basis_int_matrices()
    builder = EchelonBuilder(n)
    queue = []
    for v in generators:
        v = _as_vector(r, v)
        if any(v):
            res = builder.add(to_integer_row(v))
            if res is not None:
                queue.append(res)
    while queue and len(builder) < n:
        v = queue.pop()
        for b in range(n):
            for mat in (left[b], right[b]):
                w = kernels.matvec(mat, v)
                if any(w):
                    res = builder.add(w)
                    if res is not None:
                        queue.append(res)
                        if len(builder) == n:
                            return full_subspace(n)
    if len(builder) == n:
        return full_subspace(n)
    return builder.subspace()


def is_ideal(r: GradedRing, s: Subspace) -> bool:
    for b in all_basis(r):
        for v in s.basis:
            if not subspace_contains(s, r.mul(b, v)) or not subspace_contains(s, r.mul(v, b)):
                return False
    return True


def intersect_ideal_with(r: GradedRing, ideal: Subspace, target: Subspace) -> Subspace:
    return subspace_intersect(ideal, target)


def random_element(r: GradedRing, rng: random.Random, lo: int = -3, hi: int = 3, density: float | None = None) -> tuple:
    """Random nonzero element with small integer coordinates.

    ``density`` is the probability that a coordinate is populated; sparse
    elements generate more varied ideals than dense ones.
    """
    while True:
        x = []
        for _ in range(r.dim):
            if density is not None and rng.random() > density:
                x.append(ZERO)
            else:
                x.append(Fraction(rng.randint(lo, hi)))
        if any(x):
            return tuple(x)


def sample_ideals(r: GradedRing, count: int, seed: int = DEFAULT_SEED) -> list:
    """``count`` nonzero ideals, each the closure of one random element.

    Densities cycle through sparse to dense so that homogeneous and
    single-coordinate generators are represented.
    """
    rng = random.Random(seed)
    densities = (None, 0.15, 0.3, 0.6)
    out = []
    for k in range(count):
        x = random_element(r, rng, density=densities[k % len(densities)])
        out.append((x, ideal_closure(r, [x])))
    return out


# --------------------------------------------------------------------------
# invertible homogeneous elements


@dataclass
class InvertibilityVerdict:
    g: int
    invertible: bool
    method: str  # "exact-dimension" | "exact-symbolic" | "probabilistic"
    witness: tuple | None = None
    inverse: tuple | None = None
    determinant: MultiPoly | None = None
    seed: int | None = None
    samples: int | None = None

    def to_json(self, r: GradedRing) -> dict:
        out = {"g": self.g, "invertible": self.invertible, "method": self.method}
        if self.witness is not None:
            out["witness"] = GradedElement.from_vector(r, self.witness).to_json()
            out["inverse"] = GradedElement.from_vector(r, self.inverse).to_json()
        if self.determinant is not None:
            out["determinant_terms"] = len(self.determinant.terms)
        if self.method == "probabilistic":
            out["seed"] = self.seed
            out["samples"] = self.samples
        return out


def _block_matrix_of(r: GradedRing, x, g: int) -> list:
    """Matrix of ``y -> x y`` from R_{g^-1} to R_e (rows: R_e coords)."""
    ginv = r.group.inv(g)
    e = r.group.identity
    cols = [r.component_coords(r.mul(x, b), e) for b in r.component_basis(ginv)]
    return [[c[i] for c in cols] for i in range(len(r.labels[e]))]


def _homogeneous_inverse(r: GradedRing, x, g: int):
    ginv = r.group.inv(g)
    basis = r.component_basis(ginv)
    if not basis:
        return None
    m = _block_matrix_of(r, x, g)
    sol = solve(Matrix(len(m), len(basis), tuple(tuple(row) for row in m)), r.component_coords(r.unity, r.group.identity))
    if sol is None:
        return None
    y = lin_comb(sol, basis, r.dim)
    if r.mul(x, y) == r.unity and r.mul(y, x) == r.unity:
        return y
    return None


def _generic_block(r: GradedRing, g: int, h: int) -> list:
    """Symbolic matrix of ``y -> x y`` from R_h to R_gh for generic x in R_g."""
    gh = r.group.op(g, h)
    nv = len(r.labels[g])
    rows = len(r.labels[gh])
    cols = []
    for b in r.component_basis(h):
        col = [MultiPoly(nv) for _ in range(rows)]
        for v, a in enumerate(r.component_basis(g)):
            prod = r.component_coords(r.mul(a, b), gh)
            for i, c in enumerate(prod):
                if c:
                    col[i] = col[i] + MultiPoly.var(nv, v) * c
        cols.append(col)
    return [[cols[j][i] for j in range(len(cols))] for i in range(rows)]


def has_invertible_homogeneous(r: GradedRing, g: int, seed: int = DEFAULT_SEED, samples: int = 200) -> InvertibilityVerdict:
    """Decide whether R_g contains a unit of R.

    For x in R_g, left multiplication on R permutes the components
    (R_h -> R_gh), so det(L_x) is, up to sign, the product of the block
    determinants, and it vanishes identically as soon as one block is not
    square. Each block determinant is expanded symbolically in the
    coordinates of a generic x; a nonzero product yields an explicit witness.
    Blocks above the symbolic cap fall back to sampling.
    """
    nv = len(r.labels[g])
    if nv == 0:
        return InvertibilityVerdict(g, False, "exact-symbolic", determinant=MultiPoly(0))
    blocks = [_generic_block(r, g, h) for h in r.group.elements()]
    sizes = [(len(b), len(r.labels[h])) for h, b in zip(r.group.elements(), blocks)]
    if any(m != n for m, n in sizes):
        # a non-square block forces a column dependency in L_x
        return InvertibilityVerdict(g, False, "exact-symbolic", determinant=MultiPoly(nv))
    rng = random.Random(seed)
    if max(m for m, _ in sizes) <= SYM_DET_MAX:
        d = MultiPoly.const(nv, 1)
        for b in blocks:
            if b:
                d = d * sym_det(b)
        if d.is_zero():
            return InvertibilityVerdict(g, False, "exact-symbolic", determinant=d)
        deg = d.degree()
        for _ in range(samples):
            point = [rng.randint(-deg, deg) for _ in range(nv)]
            if d.evaluate(point):
                break
        else:
            # a nonzero polynomial of degree <= deg survives somewhere on {0..deg}^nv
            point = next(p for p in itertools.product(range(deg + 1), repeat=nv) if d.evaluate(p))
        x = r.embed(g, point)
        return InvertibilityVerdict(g, True, "exact-symbolic", x, _homogeneous_inverse(r, x, g), d)
    e = r.group.identity
    de = len(r.labels[e])
    for _ in range(samples):
        point = [rng.randint(-5, 5) for _ in range(nv)]
        x = r.embed(g, point)
        m = _block_matrix_of(r, x, g)
        if det(Matrix(de, de, tuple(tuple(row) for row in m))):
            return InvertibilityVerdict(g, True, "exact-witness", x, _homogeneous_inverse(r, x, g))
    return InvertibilityVerdict(g, False, "probabilistic", seed=seed, samples=samples)


def is_crossed_product(r: GradedRing, seed: int = DEFAULT_SEED) -> bool:
    return all(has_invertible_homogeneous(r, g, seed).invertible for g in r.group.elements())


def annihilator_check(r: GradedRing, samples: int = 100, seed: int = DEFAULT_SEED) -> dict:
    """For random nonzero a and every g: a R_g != 0 and R_g a != 0."""
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        a = random_element(r, rng)
        for g in r.group.elements():
            basis = r.component_basis(g)
            if not any(any(r.mul(a, b)) for b in basis):
                failures.append({"g": g, "side": "left", "a": GradedElement.from_vector(r, a).to_json()})
            if not any(any(r.mul(b, a)) for b in basis):
                failures.append({"g": g, "side": "right", "a": GradedElement.from_vector(r, a).to_json()})
    return {"pass": not failures, "samples": samples, "seed": seed, "failures": failures}


# --------------------------------------------------------------------------
# ideals of commutative split-semisimple subalgebras


def _minimal_polynomial(r: GradedRing, a) -> list:
    """Monic minimal polynomial of ``a`` (coefficients low to high) via Krylov powers."""
    powers = [r.unity]
    while True:
        nxt = r.mul(powers[-1], a)
        m = Matrix(r.dim, len(powers), tuple(tuple(p[i] for p in powers) for i in range(r.dim)))
        sol = solve(m, nxt)
        if sol is not None:
            return [-c for c in sol] + [ONE]
        powers.append(nxt)
        if len(powers) > r.dim + 1:
            raise AssertionError("Krylov sequence did not terminate")


def _divisors(n: int, cap: int = 10 ** 6):
    n = abs(n)
    if n > cap:
        return None
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.extend({d, n // d})
    return sorted(out)


def rational_roots(coeffs) -> list | None:
    """Distinct rational roots of a polynomial (coefficients low to high)."""
    p = Poly(tuple(coeffs))
    roots = []
    while p.degree >= 1 and p.coeffs[0] == 0:
        if ZERO not in roots:
            roots.append(ZERO)
        p = Poly(p.coeffs[1:])
    if p.degree < 1:
        return roots
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    num_div = _divisors(ints[0])
    den_div = _divisors(ints[-1])
    if num_div is None or den_div is None:
        return None
    for a in num_div:
        for b in den_div:
            for s in (1, -1):
                x = Fraction(s * a, b)
                if x not in roots and p(x) == 0:
                    roots.append(x)
    return roots


def split_idempotents(r: GradedRing, sub: Subspace, seed: int = DEFAULT_SEED, attempts: int = 20):
    """Primitive orthogonal idempotents of a commutative subalgebra isomorphic to Q^k.

    Looks for an element whose minimal polynomial has ``dim(sub)`` distinct
    rational roots, then interpolates. Returns None when no such element is
    found; a returned family is certified (idempotent, orthogonal, sums to 1,
    spans ``sub``), so the ideal lattice of ``sub`` is exactly the lattice of
    subsets of the family.
    """
    k = sub.dim
    if k == 0 or not subspace_contains(sub, r.unity):
        return None
    if k == 1:
        return [r.unity]
    rng = random.Random(seed)
    for _ in range(attempts):
        coeffs = [Fraction(rng.randint(1, 4 * k)) for _ in range(k)]
        a = lin_comb(coeffs, sub.basis, r.dim)
        mp = _minimal_polynomial(r, a)
        if len(mp) - 1 != k:
            continue
        roots = rational_roots(mp)
        if roots is None or len(roots) != k:
            continue
        idems = []
        for i, li in enumerate(roots):
            e = r.unity
            for j, lj in enumerate(roots):
                if i != j:
                    factor = tuple((ac - lj * uc) / (li - lj) for ac, uc in zip(a, r.unity))
                    e = r.mul(e, factor)
            idems.append(e)
        idems.sort(key=lambda v: tuple(-c for c in v))
        if _certify_idempotents(r, sub, idems):
            return idems
    return None


def _certify_idempotents(r, sub, idems) -> bool:
    for i, e in enumerate(idems):
        if r.mul(e, e) != e or not subspace_contains(sub, e):
            return False
        for f in idems[i + 1:]:
            if any(r.mul(e, f)):
                return False
    total = tuple(sum(cs, ZERO) for cs in zip(*idems))
    return total == r.unity and subspace_equal(span(idems, r.dim), sub)


def subalgebra_g_simplicity(r: GradedRing, sub: Subspace, seed: int = DEFAULT_SEED) -> dict:
    """Ideal lattice of a split commutative subalgebra and its canonical-action orbits.

    ``sub`` must be stable under the canonical action (e.g. Z(R_e) or a
    commutative C_R(R_e)). Invariant ideals are the sums over unions of orbits of
    the induced permutation of primitive idempotents.
    """
    idems = split_idempotents(r, sub, seed)
    if idems is None:
        return {"decided": False, "reason": "subalgebra not certified split semisimple commutative"}
    k = len(idems)
    perms = {}
    for g in r.group.elements():
        pou = partition_of_unity(r, g)
        images = [canonical_action(r, g, e, pou, check=False) for e in idems]
        perm = []
        for img in images:
            try:
                perm.append(idems.index(img))
            except ValueError:
                return {"decided": False, "reason": f"sigma_{g} does not permute the idempotents"}
        perms[g] = perm
    from .coeff import orbits as perm_orbits

    orbs = perm_orbits(k, list(perms.values()))
    ideals = []
    for size in range(1, k):
        for subset in itertools.combinations(range(k), size):
            invariant = all(set(p[i] for i in subset) == set(subset) for p in perms.values())
            ideals.append({
                "idempotents": list(subset),
                "generator": GradedElement.from_vector(r, lin_comb([ONE] * size, [idems[i] for i in subset], r.dim)).to_json(),
                "invariant": invariant,
            })
    return {
        "decided": True,
        "dimension": k,
        "idempotents": [GradedElement.from_vector(r, e).to_json() for e in idems],
        "idempotent_vectors": idems,
        "permutations": {str(g): p for g, p in perms.items()},
        "nontrivial_ideals": ideals,
        "g_simple": len(orbs) == 1,
        "orbits": orbs,
    }


def subspace_json(r: GradedRing, s: Subspace) -> dict:
    return {
        "dim": s.dim,
        "basis": [GradedElement.from_vector(r, b).to_json() for b in s.basis],
    }
