"""Exact integer/rational linear algebra kernels.

All matrices are rectangular lists of lists of Python ints (row-major);
arithmetic is arbitrary precision throughout, no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class NonSquareError(ValueError):
    pass


class NonSymmetricError(ValueError):
    pass


def dims(m):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for row in m:
        if len(row) != cols:
            raise ValueError("ragged matrix")
    return rows, cols


def is_square(m):
    r, c = dims(m)
    return r == c


def is_symmetric(m):
    r, c = dims(m)
    if r != c:
        return False
    return all(m[i][j] == m[j][i] for i in range(r) for j in range(i + 1, r))


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[0] * c for _ in range(r)]

def copy_matrix(m):
    return [row[:] for row in m]


def mat_mul(a, b):
    ra, ca = dims(a)
    rb, cb = dims(b)
    if ca != rb:
        raise ValueError("dimension mismatch in mat_mul")
    out = zeros(ra, cb)
    for i in range(ra):
        ai = a[i]
        oi = out[i]
        for k in range(ca):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cb):
                    oi[j] += aik * bk[j]
    return out


def mat_sub(a, b):
    ra, ca = dims(a)
    rb, cb = dims(b)
    if (ra, ca) != (rb, cb):
        raise ValueError("dimension mismatch in mat_sub")
    return [[a[i][j] - b[i][j] for j in range(ca)] for i in range(ra)]


def transpose(m):
    r, c = dims(m)
    return [[m[i][j] for i in range(r)] for j in range(c)]


def mat_vec(m, v):
    r, c = dims(m)
    if len(v) != c:
        raise ValueError("dimension mismatch in mat_vec")
    return [sum(m[i][j] * v[j] for j in range(c)) for i in range(r)]


def det_exact(m):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    r, c = dims(m)
    if r != c:
        raise NonSquareError("determinant needs a square matrix")
    n = r
    if n == 0:
        return 1
    a = copy_matrix(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division: Bareiss identity
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def smith_normal_form(m):
    """Return (d, u, v) with u*m*v = d in Smith normal form.

    d is diagonal with nonnegative entries, each dividing the next;
    u and v are unimodular.  Pivot choice: smallest nonzero absolute
    value, which keeps intermediate entries small.
    """
    r, c = dims(m)
    a = copy_matrix(m)
    u = identity(r)
    v = identity(c)
    t = 0
    while t < min(r, c):
        # locate smallest nonzero entry in the trailing block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            for row in v:
                row[t], row[bj] = row[bj], row[t]
        # clear row and column t; restart if a reduction leaves a remainder
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(c):
                        a[i][j] -= q * a[t][j]
                    for j in range(r):
                        u[i][j] -= q * u[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        dirty = True
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
        # divisibility: pivot must divide every remaining entry
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if a[i][j] % a[t][t]:
                    # pull the offending row into the pivot row; the next
                    # elimination pass then strictly shrinks the pivot
                    for jj in range(c):
                        a[t][jj] += a[i][jj]
                    for jj in range(r):
                        u[t][jj] += u[i][jj]
                    break
            else:
                continue
            break
        else:
            t += 1
            continue
        # re-run elimination on the same corner
    for t in range(min(r, c)):
        if a[t][t] < 0:
            for j in range(c):
                a[t][j] = -a[t][j]
            for j in range(r):
                u[t][j] = -u[t][j]
    return a, u, v


def inertia(m):
    """Sylvester inertia (n_plus, n_minus, n_zero) of a symmetric matrix.

    Exact rational symmetric elimination.  When every remaining diagonal
    pivot vanishes but some off-diagonal entry does not, a row+column
    addition creates a usable diagonal pivot (hyperbolic 2x2 blocks).
    """
    if not is_symmetric(m):
        raise NonSymmetricError("inertia needs a symmetric matrix")
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    n_plus = n_minus = n_zero = 0
    k = 0
    while k < n:
        piv = None
        for i in range(k, n):
            if a[i][i] != 0:
                piv = i
                break
        if piv is None:
            off = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                n_zero += n - k
                break
            i, j = off
            # congruence: row_i += row_j, col_i += col_j; diagonal gains 2*a[i][j]
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        d = a[k][k]
        if d > 0:
            n_plus += 1
        else:
            n_minus += 1
        # symmetric Schur complement on the trailing block
        col = [a[i][k] for i in range(n)]
        for i in range(k + 1, n):
            if col[i]:
                fi = col[i] / d
                for j in range(k + 1, n):
                    a[i][j] -= fi * col[j]
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
        k += 1
    return n_plus, n_minus, n_zero


def kernel_basis(m):
    """Rational kernel of an integer matrix, as primitive integer vectors."""
    r, c = dims(m)
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    row = 0
    for col in range(c):
        sel = None
        for i in range(row, r):
            if a[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        d = a[row][col]
        a[row] = [x / d for x in a[row]]
        for i in range(r):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == r:
            break
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for fj in free:
        vec = [Fraction(0)] * c
        vec[fj] = Fraction(1)
        for i, pj in enumerate(pivots):
            vec[pj] = -a[i][fj]
        den = 1
        for x in vec:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in vec]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g:
            ints = [x // g for x in ints]
        basis.append(ints)
    return basis


def adjugate_inverse(m):
    """Exact inverse of a unimodular-or-not integer matrix.

    Returns (adjugate, det); inverse = adjugate / det.
    """
    r, c = dims(m)
    if r != c:
        raise NonSquareError("inverse needs a square matrix")
    n = r
    d = det_exact(m)
    if d == 0:
        raise ValueError("singular matrix")
    adj = zeros(n, n)
    for i in range(n):
        for j in range(n):
            minor = [[m[a][b] for b in range(n) if b != j] for a in range(n) if a != i]
            adj[j][i] = (-1) ** (i + j) * det_exact(minor)
    return adj, d


# ---------------------------------------------------------------------------
# Integer polynomials, ascending-degree coefficient lists.

def poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p):
    return [-x for x in p]


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_scale(p, k):
    return poly_trim([k * x for x in p])


def poly_eval(p, x):
    acc = 0 if not isinstance(x, Fraction) else Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_degree(p):
    return len(p) - 1


def poly_divmod_exact(p, q):
    """Divide p by q when q is monic up to sign; raises if division is inexact."""
    q = poly_trim(q)
    p = list(poly_trim(p))
    if not q:
        raise ZeroDivisionError
    lead = q[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient ±1")
    out = [0] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and p:
        k = len(p) - len(q)
        f = p[-1] * lead
        out[k] = f
        for i, c in enumerate(q):
            p[k + i] -= f * c
        p = poly_trim(p)
    return poly_trim(out), p


def poly_derivative(p):
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_content(p):
    g = 0
    for x in p:
        g = gcd(g, x)
    return g or 1


def poly_primitive(p):
    g = poly_content(p)
    return [x // g for x in p]


def char_poly(m):
    """Monic characteristic polynomial det(xI - M), exact.

    Faddeev-LeVerrier over rationals; coefficients are integers by
    construction and returned as ints, ascending degree.
    """
    r, c = dims(m)
    if r != c:
        raise NonSquareError("char_poly needs a square matrix")
    n = r
    if n == 0:
        return [1]
    mf = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        # mk <- M * mk
        nk = [[sum(mf[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        ck = -sum(nk[i][i] for i in range(n)) / k
        coeffs[n - k] = ck
        for i in range(n):
            nk[i][i] += ck
        mk = nk
    out = []
    for x in coeffs:
        assert x.denominator == 1
        out.append(int(x))
    return out
