"""Pure-Python integer row-reduction kernels.

Reference implementation of the routines in ``_kernels.pyx``. Rows are lists
of Python ints (arbitrary precision); all results are exact. Every routine
keeps rows *primitive*: content 1, leading entry positive.
"""
from math import gcd


def make_primitive(row):
    """Divide ``row`` in place by its content and make the leading entry positive."""
    g = 0
    lead = 0
    for v in row:
        if v:
            if not lead:
                lead = v
            g = gcd(g, v)
            if g == 1 and lead > 0:
                return row
    if g == 0:
        return row
    if lead < 0:
        g = -g
    for i in range(len(row)):
        if row[i]:
            row[i] //= g
    return row


def rref_rows(rows, ncols):
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(basis, pivots)``: primitive integer rows in reduced echelon form
    (every pivot column is zero outside its own row) and their pivot columns.
    Zero rows are dropped. Input rows are not modified.
    """
    work = [list(r) for r in rows if any(r)]
    basis = []
    pivots = []
    for col in range(ncols):
        sel = -1
        for i in range(len(work)):
            if work[i][col]:
                sel = i
                break
        if sel < 0:
            continue
        prow = work.pop(sel)
        p = prow[col]
        remaining = []
        for row in work:
            c = row[col]
            if c:
                for k in range(col, ncols):
                    row[k] = p * row[k] - c * prow[k]
                make_primitive(row)
                if any(row):
                    remaining.append(row)
            else:
                remaining.append(row)
        work = remaining
        for row in basis:
            c = row[col]
            if c:
                for k in range(ncols):
                    row[k] = p * row[k] - c * prow[k]
                make_primitive(row)
        basis.append(make_primitive(prow))
        pivots.append(col)
        if not work:
            break
    return basis, pivots


def reduce_against(vec, rows, pivots):
    """Residual of ``vec`` modulo the span of semi-echelon ``rows``.

    ``pivots`` must be ascending and each row zero before its pivot. The
    residual is zero at every pivot column and is returned primitive.
    """
    out = list(vec)
    n = len(out)
    for row, col in zip(rows, pivots):
        c = out[col]
        if c:
            p = row[col]
            for k in range(col, n):
                out[k] = p * out[k] - c * row[k]
            make_primitive(out)
    return make_primitive(out)


def matvec(mat, vec):
    """Dense integer matrix-vector product skipping zero entries of ``vec``."""
    nz = [(j, v) for j, v in enumerate(vec) if v]
    out = []
    for row in mat:
        s = 0
        for j, v in nz:
            a = row[j]
            if a:
                s += a * v
        out.append(s)
    return out
