"""Finite grading groups as Cayley tables, plus the infinite cyclic group."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``{0, ..., order-1}`` given by its multiplication table.

    ``labels`` are display names; direct products label elements by tuples.
    """

    order: int
    table: tuple
    identity: int = 0
    inverse: tuple = ()
    labels: tuple = ()
    name: str = ""
    spec: dict = field(default=None, compare=False, hash=False)

    @classmethod
    def from_table(cls, table, labels=None, name="", spec=None) -> "FiniteGroup":
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise GroupError("empty group table")
        identity = next((e for e in range(n) if all(table[e][x] == x for x in range(n))), 0)
        inverse = tuple(next((y for y in range(n) if table[x][y] == identity), -1) for x in range(n))
        labels = tuple(labels) if labels is not None else tuple(range(n))
        return cls(n, table, identity, inverse, labels, name, spec)

    def elements(self) -> range:
        return range(self.order)

    def _check(self, x):
        if not (isinstance(x, int) and 0 <= x < self.order):
            raise GroupError(f"element {x!r} out of range for group of order {self.order}")

    def op(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return self.table[x][y]

    def inv(self, x: int) -> int:
        self._check(x)
        return self.inverse[x]

    def order_of(self, x: int) -> int:
        self._check(x)
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
            if k > self.order:
                raise GroupError("element has no finite order; table is not a group")
        return k

    def is_abelian(self) -> bool:
        return all(self.table[x][y] == self.table[y][x] for x in self.elements() for y in self.elements())

    def element_from_label(self, label):
        if isinstance(label, list):
            label = tuple(label)
        try:
            return self.labels.index(label)
        except ValueError:
            pass
        if isinstance(label, int) and 0 <= label < self.order:
            return label
        raise GroupError(f"unknown group element {label!r}")

    def to_json(self) -> dict:
        if self.spec is not None:
            return self.spec
        return {"kind": "table", "table": [list(r) for r in self.table]}


def make_cyclic(n: int) -> FiniteGroup:
    if not isinstance(n, int) or n < 1:
        raise GroupError(f"cyclic group order must be a positive integer, got {n!r}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup.from_table(table, name=f"Z{n}", spec={"kind": "cyclic", "n": n})


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Product group; element ``i * b.order + j`` is the pair ``(i, j)``."""
    pairs = list(itertools.product(a.elements(), b.elements()))
    index = {p: k for k, p in enumerate(pairs)}
    table = [
        [index[(a.table[x1][y1], b.table[x2][y2])] for (y1, y2) in pairs]
        for (x1, x2) in pairs
    ]
    labels = [(a.labels[i], b.labels[j]) for i, j in pairs]
    return FiniteGroup.from_table(
        table, labels, name=f"{a.name}x{b.name}",
        spec={"kind": "product", "factors": [a.to_json(), b.to_json()]},
    )


def validate(g: FiniteGroup) -> list:
    """Exhaustive axiom check; returns human-readable violations (empty when valid)."""
    out = []
    n = g.order
    if len(g.table) != n or any(len(r) != n for r in g.table):
        return [f"table is not {n}x{n}"]
    for row in g.table:
        for v in row:
            if not (0 <= v < n):
                return [f"table entry {v} outside 0..{n - 1}"]
    e = g.identity
    for x in range(n):
        if g.table[e][x] != x or g.table[x][e] != x:
            out.append(f"identity: e*{x} or {x}*e differs from {x}")
    for x in range(n):
        y = g.inverse[x] if x < len(g.inverse) else -1
        if not (0 <= y < n) or g.table[x][y] != e or g.table[y][x] != e:
            out.append(f"inverse: element {x} has no two-sided inverse")
    for x, y, z in itertools.product(range(n), repeat=3):
        if g.table[g.table[x][y]][z] != g.table[x][g.table[y][z]]:
            out.append(f"associativity fails at ({x}, {y}, {z})")
    return out


@dataclass(frozen=True)
class IntegerGroup:
    """The additive group of integers; elements are Python ints."""

    identity: int = 0

    def op(self, x: int, y: int) -> int:
        return x + y

    def inv(self, x: int) -> int:
        return -x

    def to_json(self) -> dict:
        return {"kind": "integers"}


def group_from_json(obj):
    kind = obj.get("kind")
    if kind == "cyclic":
        return make_cyclic(int(obj["n"]))
    if kind == "product":
        factors = [group_from_json(f) for f in obj["factors"]]
        if len(factors) < 2:
            raise GroupError("product needs at least two factors")
        g = factors[0]
        for f in factors[1:]:
            g = direct_product(g, f)
        return g
    if kind == "integers":
        return IntegerGroup()
    if kind == "table":
        g = FiniteGroup.from_table(obj["table"])
        violations = validate(g)
        if violations:
            raise GroupError("; ".join(violations[:3]))
        return g
    raise GroupError(f"unknown group kind {kind!r}")
