"""Commutative coefficient rings, their automorphisms and G-simplicity.

Two families are supported, both with completely known ideal lattices:

* :class:`FunctionRing` -- ``Q^X`` for a finite set ``X``; ideals are the
  functions vanishing off a subset.
* :class:`PolyCoeffRing` -- ``Q[z]``; every ideal is principal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import ONE, ZERO, Poly, as_rational, format_rational, poly_shift


class RingMismatch(ValueError):
    """An automorphism or ideal does not belong to the ring it is used with."""


@dataclass(frozen=True)
class FunctionRing:
    points: tuple

    @classmethod
    def on(cls, n: int) -> "FunctionRing":
        return cls(tuple(range(n)))

    @property
    def size(self) -> int:
        return len(self.points)

    def one(self) -> tuple:
        return (ONE,) * self.size

    def zero(self) -> tuple:
        return (ZERO,) * self.size

    def indicator(self, subset) -> tuple:
        subset = set(subset)
        return tuple(ONE if i in subset else ZERO for i in range(self.size))

    def mul(self, f, g) -> tuple:
        return tuple(a * b for a, b in zip(f, g))

    def to_json(self) -> dict:
        return {"ring": "functions", "points": list(self.points)}


@dataclass(frozen=True)
class PolyCoeffRing:
    variable: str = "z"

    def one(self) -> Poly:
        return Poly.const(1)

    def to_json(self) -> dict:
        return {"ring": "poly"}


CoefficientRing = Union[FunctionRing, PolyCoeffRing]


@dataclass(frozen=True)
class PermutationInduced:
    """``f -> f o perm`` on functions of ``{0..n-1}``."""

    perm: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a permutation: {list(perm)}")
        object.__setattr__(self, "perm", perm)

    def apply(self, f):
        if not isinstance(f, tuple) or len(f) != len(self.perm):
            raise RingMismatch("permutation automorphism applied to a non-function element")
        return tuple(f[self.perm[x]] for x in range(len(self.perm)))

    def inverse(self) -> "PermutationInduced":
        inv = [0] * len(self.perm)
        for x, y in enumerate(self.perm):
            inv[y] = x
        return PermutationInduced(tuple(inv))

    def compose(self, other: "PermutationInduced") -> "PermutationInduced":
        """The automorphism ``self o other`` (apply ``other`` first)."""
        # (self o other)(f) = (f o other.perm) o self.perm
        return PermutationInduced(tuple(other.perm[self.perm[x]] for x in range(len(self.perm))))

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))

    def to_json(self) -> dict:
        return {"perm": list(self.perm)}


@dataclass(frozen=True)
class Shift:
    """``f(z) -> f(z + c)`` on ``Q[z]``."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))

    def apply(self, f):
        if not isinstance(f, Poly):
            raise RingMismatch("shift automorphism applied to a non-polynomial")
        return poly_shift(f, self.c)

    def inverse(self) -> "Shift":
        return Shift(-self.c)

    def compose(self, other: "Shift") -> "Shift":
        return Shift(self.c + other.c)

    def is_identity(self) -> bool:
        return self.c == 0

    def to_json(self) -> dict:
        return {"shift": format_rational(self.c)}


RingAutomorphism = Union[PermutationInduced, Shift]


def automorphism_from_json(obj) -> RingAutomorphism:
    if "perm" in obj:
        return PermutationInduced(tuple(obj["perm"]))
    if "shift" in obj:
        return Shift(as_rational(obj["shift"]))
    raise ValueError(f"unknown automorphism {obj!r}")


def ring_from_json(obj) -> CoefficientRing:
    kind = obj.get("ring")
    if kind == "functions":
        return FunctionRing(tuple(obj["points"]))
    if kind == "poly":
        return PolyCoeffRing()
    if kind == "rationals":
        return FunctionRing((0,))
    raise ValueError(f"unknown coefficient ring {kind!r}")


@dataclass(frozen=True)
class SubsetIdeal:
    """Functions vanishing outside ``subset``."""

    subset: frozenset

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))

    def to_json(self) -> dict:
        return {"subset": sorted(self.subset)}


@dataclass(frozen=True)
class PrincipalIdeal:
    generator: Poly

    def to_json(self) -> dict:
        return {"principal": self.generator.to_json()}


IdealDescriptor = Union[SubsetIdeal, PrincipalIdeal]


def orbits(x_size: int, generators) -> list:
    """Orbits of the group generated by permutations of ``{0..x_size-1}``, sorted."""
    gens = []
    for g in generators:
        g = tuple(g.perm if isinstance(g, PermutationInduced) else g)
        if sorted(g) != list(range(x_size)):
            raise ValueError(f"not a permutation of {x_size} points: {list(g)}")
        gens.append(g)
    seen = [False] * x_size
    out = []
    for start in range(x_size):
        if seen[start]:
            continue
        orbit = {start}
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.add(y)
                    stack.append(y)
        out.append(sorted(orbit))
    return out


def is_g_invariant_ideal(ideal: IdealDescriptor, action) -> bool:
    for a in action:
        if isinstance(ideal, SubsetIdeal):
            if not isinstance(a, PermutationInduced):
                raise RingMismatch("subset ideal under a non-permutation automorphism")
            inv = a.inverse().perm
            if any(inv[x] not in ideal.subset for x in ideal.subset):
                return False
        elif isinstance(ideal, PrincipalIdeal):
            if not isinstance(a, Shift):
                raise RingMismatch("principal ideal under a non-shift automorphism")
            f = ideal.generator
            if not f.divides(a.apply(f)):
                return False
        else:
            raise TypeError(f"unknown ideal descriptor {ideal!r}")
    return True


@dataclass(frozen=True)
class GSimplicity:
    g_simple: bool
    witness: IdealDescriptor | None
    reason: str

    def to_json(self) -> dict:
        return {
            "g_simple": self.g_simple,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "reason": self.reason,
        }


def is_g_simple(ring: CoefficientRing, action) -> GSimplicity:
    """Decide whether ``ring`` has no proper nonzero ideal stable under ``action``."""
    action = list(action)
    if isinstance(ring, FunctionRing):
        for a in action:
            if not isinstance(a, PermutationInduced) or len(a.perm) != ring.size:
                raise RingMismatch("function ring needs permutations of its point set")
        orbs = orbits(ring.size, action)
        if len(orbs) == 1:
            return GSimplicity(True, None, "action is transitive on the point set")
        smallest = min(orbs, key=lambda o: (len(o), o))
        return GSimplicity(
            False, SubsetIdeal(frozenset(smallest)),
            f"orbit {smallest} is a proper invariant subset",
        )
    if isinstance(ring, PolyCoeffRing):
        for a in action:
            if not isinstance(a, Shift):
                raise RingMismatch("Q[z] coefficient ring needs shift automorphisms")
        if all(a.c == 0 for a in action):
            return GSimplicity(
                False, PrincipalIdeal(Poly.z()),
                "trivial action: every ideal is invariant and (z) is proper",
            )
        return GSimplicity(
            True, None,
            "a nonzero shift fixes no principal ideal (f) with f nonconstant: "
            "f | f(z+c) with equal degree and leading coefficient forces f(z+c) = f",
        )
    raise TypeError(f"unknown coefficient ring {ring!r}")


def is_simple_ring(ring: CoefficientRing) -> GSimplicity:
    """Plain simplicity (trivial group action)."""
    if isinstance(ring, FunctionRing):
        identity = PermutationInduced(tuple(range(ring.size)))
        return is_g_simple(ring, [identity])
    return is_g_simple(ring, [Shift(0)])
