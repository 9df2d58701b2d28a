# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer row-reduction kernels.

Same contracts as ``_kernels_py``; entries stay Python ints so arithmetic
remains arbitrary precision, only the loop machinery is compiled.
"""
from math import gcd


cpdef list make_primitive(list row):
    cdef Py_ssize_t i, n = len(row)
    cdef object g = 0, lead = 0, v
    for i in range(n):
        v = row[i]
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
    for i in range(n):
        if row[i]:
            row[i] = row[i] // g
    return row


cdef bint _nonzero(list row):
    cdef object v
    for v in row:
        if v:
            return True
    return False


def rref_rows(rows, Py_ssize_t ncols):
    cdef list work = [list(r) for r in rows if any(r)]
    cdef list basis = [], pivots = [], remaining, prow, row
    cdef Py_ssize_t col, i, k, sel, nwork
    cdef object p, c
    for col in range(ncols):
        sel = -1
        nwork = len(work)
        for i in range(nwork):
            if (<list>work[i])[col]:
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
                if _nonzero(row):
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
    cdef list out = list(vec), row
    cdef Py_ssize_t n = len(out), k, col, idx, nrows = len(rows)
    cdef object c, p
    for idx in range(nrows):
        row = rows[idx]
        col = pivots[idx]
        c = out[col]
        if c:
            p = row[col]
            for k in range(col, n):
                out[k] = p * out[k] - c * row[k]
            make_primitive(out)
    return make_primitive(out)


def matvec(mat, vec):
    cdef list nz = [], out = [], row
    cdef Py_ssize_t j, n = len(vec)
    cdef object s, a, v
    for j in range(n):
        v = vec[j]
        if v:
            nz.append((j, v))
    for row in mat:
        s = 0
        for j, v in nz:
            a = row[j]
            if a:
                s += a * v
        out.append(s)
    return out
