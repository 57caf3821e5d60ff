"""Integer matrix algorithms: extended gcd, Hermite and Smith normal forms,
integer kernels and saturation.

Matrices are lists of rows of Python ints. Nothing here touches floats.
"""

from fractions import Fraction
from math import gcd


def xgcd(a, b):
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def vector_xgcd(values):
    """Return (g, coeffs) with sum(c*v) == g == gcd(values) >= 0."""
    coeffs = [0] * len(values)
    g = 0
    for i, v in enumerate(values):
        if v == 0:
            continue
        g2, x, y = xgcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y
        g = g2
    return g, coeffs


def content(vec):
    g = 0
    for x in vec:
        g = gcd(g, x)
    return g


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(M):
    return [list(row) for row in M]


def shape(M, ncols=None):
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    return m, n


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    if not B:
        return [[0] * 0 for _ in A]
    cols = len(B[0])
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(M, ncols=None):
    m, n = shape(M, ncols)
    return [[M[i][j] for i in range(m)] for j in range(n)]


def _row_combine(M, i, j, a, b, c, d):
    """Replace rows (i, j) by (a*Ri + b*Rj, c*Ri + d*Rj)."""
    ri, rj = M[i], M[j]
    M[i] = [a * x + b * y for x, y in zip(ri, rj)]
    M[j] = [c * x + d * y for x, y in zip(ri, rj)]


def hermite_normal_form(M, ncols=None):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and H == U*M. Nonzero rows of H come
    first, pivots are positive and strictly increase in column, and every
    entry above a pivot lies in [0, pivot).
    """
    m, n = shape(M, ncols)
    H = copy(M)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = xgcd(a, b)
            _row_combine(H, r, i, x, y, -b // g, a // g)
            _row_combine(U, r, i, x, y, -b // g, a // g)
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def hnf_rows(rows, ncols):
    """Canonical basis (nonzero HNF rows) of the lattice spanned by rows."""
    if not rows:
        return []
    H, _ = hermite_normal_form(rows, ncols)
    return [row for row in H if any(row)]


def smith_normal_form(M, ncols=None):
    """Return (U, D, V) with D == U*M*V diagonal, d1 | d2 | ..., d_i >= 0."""
    m, n = shape(M, ncols)
    A = copy(M)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, A, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(j, t, -q)
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def invariant_factors(M, ncols=None):
    _, D, _ = smith_normal_form(M, ncols)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def integer_kernel(M, ncols):
    """Canonical (HNF) basis of {x in Z^ncols : M x = 0}. Always saturated."""
    if not M:
        return identity(ncols)
    _, D, V = smith_normal_form(M, ncols)
    k = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    basis = [[V[i][j] for i in range(ncols)] for j in range(k, ncols)]
    return hnf_rows(basis, ncols)


def unimodular_inverse(M):
    """Inverse of a square integer matrix with determinant +-1."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    out = [[x for x in row[n:]] for row in A]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def determinant(M):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = copy(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def saturate_rows(rows, ncols):
    """Basis of (Q-span of rows) intersected with Z^ncols, in HNF.

    Rows must be linearly independent.
    """
    if not rows:
        return []
    _, D, V = smith_normal_form(rows, ncols)
    k = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    if k != len(rows):
        raise ValueError("basis vectors are linearly dependent")
    Vinv = unimodular_inverse(V)
    return hnf_rows(Vinv[:k], ncols)


def complete_primitive(c):
    """Given a primitive integer vector c, return a unimodular matrix whose
    first row is c."""
    n = len(c)
    U, D, V = smith_normal_form([list(c)], n)
    if D[0][0] != 1:
        raise ValueError("vector is not primitive")
    # U*c*V = e1, so c = U^-1 e1 V^-1; U is +-1.
    Vinv = unimodular_inverse(V)
    s = U[0][0]
    Vinv[0] = [s * x for x in Vinv[0]]
    return Vinv
