# cython: language_level=3
# cython: boundscheck=False
"""Cython build of the hot kernels.

Same algorithms as ``_kernels_py`` (which is the reference); coefficients
stay arbitrary-precision Python ints / Fractions, the compilation removes
the interpreter overhead of the inner loops.  Outputs must be bit-identical
to the pure-Python kernels.
"""

from fractions import Fraction

BACKEND_NAME = "c"


def poly_mul_terms(dict aterms, dict bterms):
    """Multiply two sparse term dicts {exponent tuple: Fraction}."""
    cdef Py_ssize_t i, n
    cdef bint integral
    if not aterms or not bterms:
        return {}
    if len(aterms) > len(bterms):
        aterms, bterms = bterms, aterms
    integral = True
    for c in aterms.values():
        if c.denominator != 1:
            integral = False
            break
    if integral:
        for c in bterms.values():
            if c.denominator != 1:
                integral = False
                break
    cdef dict out = {}
    cdef tuple ea, eb, key
    cdef list bitems
    if integral:
        bitems = [(eb, cb.numerator) for eb, cb in bterms.items()]
        for ea, ca in aterms.items():
            na = ca.numerator
            n = len(ea)
            for eb, nb in bitems:
                key = tuple([ea[i] + eb[i] for i in range(n)])
                prod = na * nb
                if key in out:
                    out[key] = out[key] + prod
                else:
                    out[key] = prod
        return {e: Fraction(v) for e, v in out.items() if v}
    bitems = list(bterms.items())
    for ea, ca in aterms.items():
        n = len(ea)
        for eb, cb in bitems:
            key = tuple([ea[i] + eb[i] for i in range(n)])
            prod = ca * cb
            if key in out:
                out[key] = out[key] + prod
            else:
                out[key] = prod
    return {e: c for e, c in out.items() if c}


cdef void _col_submul(list col, list src, object q):
    cdef Py_ssize_t i
    for i in range(len(col)):
        col[i] = col[i] - q * src[i]


def hnf_cols(list cols, Py_ssize_t nrows, list ucols=None):
    """Column-style Hermite normal form, in place; returns pivot rows."""
    cdef Py_ssize_t ncols = len(cols)
    cdef Py_ssize_t r, j, c = 0
    cdef Py_ssize_t jmin, nonzero
    cdef list pivot_rows = []
    for r in range(nrows):
        if c >= ncols:
            break
        while True:
            jmin = -1
            vmin = 0
            nonzero = 0
            for j in range(c, ncols):
                v = (<list>cols[j])[r]
                if v:
                    nonzero += 1
                    av = -v if v < 0 else v
                    if jmin < 0 or av < vmin:
                        jmin = j
                        vmin = av
            if nonzero == 0:
                jmin = -1
                break
            if nonzero == 1:
                break
            pv = (<list>cols[jmin])[r]
            for j in range(c, ncols):
                if j == jmin or not (<list>cols[j])[r]:
                    continue
                q = (<list>cols[j])[r] // pv
                if q:
                    _col_submul(<list>cols[j], <list>cols[jmin], q)
                    if ucols is not None:
                        _col_submul(<list>ucols[j], <list>ucols[jmin], q)
        if jmin < 0:
            continue
        if jmin != c:
            cols[c], cols[jmin] = cols[jmin], cols[c]
            if ucols is not None:
                ucols[c], ucols[jmin] = ucols[jmin], ucols[c]
        if (<list>cols[c])[r] < 0:
            cols[c] = [-v for v in <list>cols[c]]
            if ucols is not None:
                ucols[c] = [-v for v in <list>ucols[c]]
        pv = (<list>cols[c])[r]
        for j in range(c):
            q = (<list>cols[j])[r] // pv
            if q:
                _col_submul(<list>cols[j], <list>cols[c], q)
                if ucols is not None:
                    _col_submul(<list>ucols[j], <list>ucols[c], q)
        pivot_rows.append(r)
        c += 1
    return pivot_rows


def snf_diag(list rows):
    """Smith normal form diagonal; destroys ``rows``."""
    if not rows or not rows[0]:
        return []
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(<list>rows[0])
    cdef Py_ssize_t t = 0, i, j, k, pi, pj
    cdef bint again, fix
    cdef list diag = [], row, rt, ri
    while t < min(m, n):
        pi = pj = -1
        pv = 0
        for i in range(t, m):
            row = <list>rows[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    av = -v if v < 0 else v
                    if pi < 0 or av < pv:
                        pi = i
                        pj = j
                        pv = av
        if pi < 0:
            break
        rows[t], rows[pi] = rows[pi], rows[t]
        if pj != t:
            for row in rows:
                row[t], row[pj] = row[pj], row[t]
        while True:
            again = False
            piv = (<list>rows[t])[t]
            for i in range(t + 1, m):
                v = (<list>rows[i])[t]
                if v:
                    q = v // piv
                    if q:
                        ri = <list>rows[i]
                        rt = <list>rows[t]
                        for j in range(t, n):
                            ri[j] = ri[j] - q * rt[j]
                    if (<list>rows[i])[t]:
                        rows[t], rows[i] = rows[i], rows[t]
                        again = True
                        break
            if again:
                continue
            piv = (<list>rows[t])[t]
            rt = <list>rows[t]
            for j in range(t + 1, n):
                v = rt[j]
                if v:
                    q = v // piv
                    if q:
                        for row in rows:
                            row[j] = row[j] - q * row[t]
                    if rt[j]:
                        for row in rows:
                            row[t], row[j] = row[j], row[t]
                        again = True
                        break
            if again:
                continue
            piv = (<list>rows[t])[t]
            fix = False
            for i in range(t + 1, m):
                row = <list>rows[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        rt = <list>rows[t]
                        for k in range(t, n):
                            rt[k] = rt[k] + row[k]
                        fix = True
                        break
                if fix:
                    break
            if not fix:
                break
        piv = (<list>rows[t])[t]
        diag.append(piv if piv > 0 else -piv)
        t += 1
    return diag
