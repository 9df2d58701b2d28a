"""Matrix rings graded by assigning matrix units to group elements."""
from __future__ import annotations

from .graded import GradedRing, GradingError
from .groups import FiniteGroup


def graded_matrix_ring(group: FiniteGroup, degrees, name: str = "") -> GradedRing:
    """``M_n(Q)`` with ``E_ij`` placed in degree ``degrees[i][j]``.

    The placement must satisfy ``deg(E_ij) deg(E_jk) = deg(E_ik)``; a clash
    raises :class:`GradingError`.
    """
    n = len(degrees)
    labels = {g: [] for g in group.elements()}
    where = {}
    for i in range(n):
        for j in range(n):
            g = degrees[i][j]
            where[(i, j)] = (g, len(labels[g]))
            labels[g].append(f"E{i + 1}{j + 1}")
    units = {g: [] for g in group.elements()}
    for (i, j), (g, k) in sorted(where.items(), key=lambda t: t[1]):
        units[g].append((i, j))

    def product(g, a, h, b):
        i, j = units[g][a]
        k, l = units[h][b]
        gh = group.op(g, h)
        out = [0] * len(units[gh])
        if j == k:
            tg, tk = where[(i, l)]
            if tg != gh:
                raise GradingError(f"E{i + 1}{l + 1} has degree {tg}, expected {gh}")
            out[tk] = 1
        return out

    e = group.identity
    unity = [1 if units[e][k][0] == units[e][k][1] else 0 for k in range(len(units[e]))]
    return GradedRing.from_basis_product(group, labels, product, unity, name)


def matrix_of(r: GradedRing, x, n: int) -> list:
    """Read a ring vector back as an ``n x n`` matrix using the ``Eij`` labels."""
    out = [[0] * n for _ in range(n)]
    for g in r.group.elements():
        for k, lab in enumerate(r.labels[g]):
            c = x[r.offsets[g] + k]
            if c:
                out[int(lab[1]) - 1][int(lab[2]) - 1] = c
    return out
