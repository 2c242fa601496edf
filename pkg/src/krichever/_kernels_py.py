"""Pure-Python reference kernels.

These are the hot inner loops of the whole package: sparse-polynomial
multiplication (every series operation bottoms out here) and the integer
column eliminations behind Hermite/Smith normal forms.  A Cython build of
the same routines lives in ``_kernels_c.pyx``; ``backend`` picks whichever
is importable.  Both versions must produce bit-identical results.
"""

from fractions import Fraction

BACKEND_NAME = "python"


def poly_mul_terms(aterms, bterms):
    """Multiply two sparse term dicts {exponent tuple: Fraction}.

    When every coefficient is integral (the b-model and all lattice work)
    the accumulation runs on plain ints, which is several times faster
    than Fraction arithmetic.
    """
    if not aterms or not bterms:
        return {}
    if len(aterms) > len(bterms):
        aterms, bterms = bterms, aterms
    integral = all(c.denominator == 1 for c in aterms.values()) and all(
        c.denominator == 1 for c in bterms.values()
    )
    out = {}
    if integral:
        bitems = [(eb, cb.numerator) for eb, cb in bterms.items()]
        for ea, ca in aterms.items():
            na = ca.numerator
            for eb, nb in bitems:
                key = tuple(map(sum, zip(ea, eb)))
                prod = na * nb
                if key in out:
                    out[key] += prod
                else:
                    out[key] = prod
        return {e: Fraction(n) for e, n in out.items() if n}
    bitems = list(bterms.items())
    for ea, ca in aterms.items():
        for eb, cb in bitems:
            key = tuple(map(sum, zip(ea, eb)))
            prod = ca * cb
            if key in out:
                out[key] += prod
            else:
                out[key] = prod
    return {e: c for e, c in out.items() if c}


def hnf_cols(cols, nrows, ucols=None):
    """Column-style Hermite normal form, in place.

    ``cols`` is a list of length-``nrows`` integer columns.  On return the
    first ``rank`` columns are the HNF basis (pivots positive, entries to
    the left of a pivot reduced into [0, pivot)), the remaining columns are
    zero.  If ``ucols`` is given (identity columns), the same column
    operations are applied to it, so that  M . U = H.  Returns the list of
    pivot rows.
    """
    ncols = len(cols)
    pivot_rows = []
    c = 0
    for r in range(nrows):
        if c >= ncols:
            break
        # gcd-eliminate row r among columns c..end until one survivor
        while True:
            jmin = -1
            vmin = 0
            nonzero = 0
            for j in range(c, ncols):
                v = cols[j][r]
                if v:
                    nonzero += 1
                    if jmin < 0 or abs(v) < vmin:
                        jmin = j
                        vmin = abs(v)
            if nonzero == 0:
                jmin = -1
                break
            if nonzero == 1:
                break
            pv = cols[jmin][r]
            for j in range(c, ncols):
                if j == jmin or not cols[j][r]:
                    continue
                q = cols[j][r] // pv
                if q:
                    _col_submul(cols[j], cols[jmin], q)
                    if ucols is not None:
                        _col_submul(ucols[j], ucols[jmin], q)
        if jmin < 0:
            continue
        if jmin != c:
            cols[c], cols[jmin] = cols[jmin], cols[c]
            if ucols is not None:
                ucols[c], ucols[jmin] = ucols[jmin], ucols[c]
        if cols[c][r] < 0:
            cols[c] = [-v for v in cols[c]]
            if ucols is not None:
                ucols[c] = [-v for v in ucols[c]]
        pv = cols[c][r]
        for j in range(c):
            q = cols[j][r] // pv
            if q:
                _col_submul(cols[j], cols[c], q)
                if ucols is not None:
                    _col_submul(ucols[j], ucols[c], q)
        pivot_rows.append(r)
        c += 1
    return pivot_rows


def _col_submul(col, src, q):
    for i in range(len(col)):
        col[i] -= q * src[i]


def snf_diag(rows):
    """Smith normal form diagonal of an integer matrix (list of rows).

    Destroys ``rows``.  Returns the list of nonzero invariant factors
    d_1 | d_2 | ... (positive, divisibility chain).
    """
    if not rows or not rows[0]:
        return []
    m = len(rows)
    n = len(rows[0])
    diag = []
    t = 0
    while t < min(m, n):
        # locate the smallest nonzero entry in the remaining block
        pi = pj = -1
        pv = 0
        for i in range(t, m):
            row = rows[i]
            for j in range(t, n):
                v = row[j]
                if v and (pi < 0 or abs(v) < pv):
                    pi, pj, pv = i, j, abs(v)
        if pi < 0:
            break
        rows[t], rows[pi] = rows[pi], rows[t]
        if pj != t:
            for row in rows:
                row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t below the pivot
            again = False
            piv = rows[t][t]
            for i in range(t + 1, m):
                v = rows[i][t]
                if v:
                    q = v // piv
                    if q:
                        ri, rt = rows[i], rows[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if rows[i][t]:
                        rows[t], rows[i] = rows[i], rows[t]
                        again = True
                        break
            if again:
                continue
            # clear row t right of the pivot
            piv = rows[t][t]
            rt = rows[t]
            for j in range(t + 1, n):
                v = rt[j]
                if v:
                    q = v // piv
                    if q:
                        for row in rows:
                            row[j] -= q * row[t]
                    if rt[j]:
                        for row in rows:
                            row[t], row[j] = row[j], row[t]
                        again = True
                        break
            if again:
                continue
            # pivot must divide every remaining entry
            piv = rows[t][t]
            fix = False
            for i in range(t + 1, m):
                row = rows[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        rt = rows[t]
                        for k in range(t, n):
                            rt[k] += row[k]
                        fix = True
                        break
                if fix:
                    break
            if not fix:
                break
        piv = rows[t][t]
        diag.append(piv if piv > 0 else -piv)
        t += 1
    return diag
