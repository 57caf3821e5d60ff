"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions (ints are accepted on input).
Subspaces of Q^n are represented by their reduced row echelon basis, which
is canonical, so two subspaces are equal iff their bases are equal.
"""

from fractions import Fraction


def qmat(M):
    return [[Fraction(x) for x in row] for row in M]


def qvec(v):
    return [Fraction(x) for x in v]


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A or not B:
        return [[Fraction(0)] * (len(B[0]) if B else 0) for _ in A]
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def transpose(M):
    return [list(col) for col in zip(*M)]


def matpow(A, k):
    n = len(A)
    R = eye(n)
    for _ in range(k):
        R = matmul(R, A)
    return R


def is_zero(A):
    return all(x == 0 for row in A for x in row)


def rref(M, ncols=None):
    """Return (R, pivots): reduced row echelon form with zero rows dropped."""
    A = qmat(M)
    if not A:
        return [], []
    n = len(A[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M):
    return len(rref(M)[0])


def nullspace(M, ncols):
    """Basis of {x : M x = 0} as a list of vectors."""
    R, pivots = rref(M, ncols) if M else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(A, b):
    """One solution x of A x = b, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(qmat(A), qvec(b))]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def inverse(A):
    n = len(A)
    aug = [list(row) + e for row, e in zip(qmat(A), eye(n))]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R[:n]]


# -- subspaces ---------------------------------------------------------------

def span(vectors, n):
    """Canonical basis (RREF rows) of the span of the given vectors in Q^n."""
    vectors = [v for v in vectors]
    if not vectors:
        return []
    return rref(vectors, n)[0]


def span_sum(U, V, n):
    return span(list(U) + list(V), n)


def contains(U, v, n):
    """True iff v lies in span(U)."""
    if all(x == 0 for x in v):
        return True
    if not U:
        return False
    return rank(list(U) + [list(v)]) == rank(U)


def is_subspace(U, V, n):
    return all(contains(V, u, n) for u in U)


def intersect(U, V, n):
    """Basis of span(U) intersected with span(V)."""
    if not U or not V:
        return []
    # solve sum a_i U_i - sum b_j V_j = 0
    k = len(U)
    cols = [list(u) for u in U] + [[-x for x in v] for v in V]
    M = transpose(cols)
    ker = nullspace(M, len(cols))
    vecs = []
    for coeffs in ker:
        vecs.append([sum((coeffs[i] * U[i][c] for i in range(k)), Fraction(0)) for c in range(n)])
    return span(vecs, n)


def image(A, U, n):
    """span(A u for u in U)."""
    return span([matvec(A, u) for u in U], n)


def preimage(A, W, n):
    """{x : A x in span(W)}."""
    # x in preimage iff A x is killed by every functional vanishing on W
    ann = nullspace(W, n) if W else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if not ann:
        return eye(n)
    M = matmul(ann, A)
    return span(nullspace(M, n), n)
