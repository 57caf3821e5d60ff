"""Integral lattices with a symmetric pairing.

Vectors are tuples of ints in the coordinates of the lattice basis. All
operations are exact and return new immutable values.
"""

from dataclasses import dataclass, field
from typing import Optional

from . import intlin
from .errors import (DependentBasisError, DimensionMismatch, InvariantError,
                     NoPartnerError, NotIsotropicError, NotPrimitiveError,
                     OrbitError, ZeroVectorError)

Vec = tuple


@dataclass(frozen=True)
class Lattice:
    """Free Z-module of finite rank with an integral symmetric Gram matrix."""

    gram: tuple
    labels: Optional[tuple] = None
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise InvariantError("gram square", f"expected {n} columns")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise InvariantError("gram symmetric", f"entry ({i},{j})")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != n:
                raise InvariantError("labels length", f"{len(labels)} labels for rank {n}")
            object.__setattr__(self, "labels", labels)
        flags = frozenset(self.flags)
        object.__setattr__(self, "flags", flags)
        unknown = flags - {"even", "unimodular"}
        if unknown:
            raise InvariantError("known flags", ", ".join(sorted(unknown)))
        if "even" in flags and not self.is_even():
            raise InvariantError("even", "odd diagonal entry")
        if "unimodular" in flags and abs(self.det()) != 1:
            raise InvariantError("unimodular", f"det = {self.det()}")

    @property
    def rank(self):
        return len(self.gram)

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def det(self):
        return intlin.determinant([list(r) for r in self.gram])

    def is_unimodular(self):
        return abs(self.det()) == 1

    def check(self, v):
        if len(v) != self.rank:
            raise DimensionMismatch(f"vector of length {len(v)} in lattice of rank {self.rank}")
        return tuple(int(x) for x in v)

    def gv(self, v):
        """Gram matrix times v: the functional x -> pair(x, v)."""
        return tuple(sum(g * x for g, x in zip(row, v)) for row in self.gram)

    def pair(self, u, v):
        u = self.check(u)
        v = self.check(v)
        return sum(a * b for a, b in zip(u, self.gv(v)))

    def norm(self, v):
        return self.pair(v, v)

    def unit(self, i):
        return tuple(int(j == i) for j in range(self.rank))

    def zero(self):
        return (0,) * self.rank


# -- constructors ------------------------------------------------------------

def hyperbolic_plane():
    """U = [[0, 1], [1, 0]]."""
    return Lattice(((0, 1), (1, 0)), labels=("e", "f"), flags={"even", "unimodular"})


def e8(sign=-1):
    """E8 root lattice scaled by sign (default negative definite E8(-1))."""
    edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
    G = [[2 * int(i == j) for j in range(8)] for i in range(8)]
    for i, j in edges:
        G[i][j] = G[j][i] = -1
    G = [[sign * x for x in row] for row in G]
    return Lattice(G, labels=tuple(f"a{i + 1}" for i in range(8)), flags={"even", "unimodular"})


def direct_sum(*lattices):
    n = sum(L.rank for L in lattices)
    G = [[0] * n for _ in range(n)]
    labels = []
    off = 0
    for k, L in enumerate(lattices):
        for i in range(L.rank):
            for j in range(L.rank):
                G[off + i][off + j] = L.gram[i][j]
        names = L.labels or tuple(str(i) for i in range(L.rank))
        labels.extend(f"{name}_{k}" for name in names)
        off += L.rank
    flags = set.intersection(*(set(L.flags) for L in lattices)) if lattices else {"even", "unimodular"}
    return Lattice(G, labels=tuple(labels), flags=flags)


def k3_lattice():
    """H^2 of a K3 surface: U^3 + E8(-1)^2, signature (3, 19)."""
    U = hyperbolic_plane()
    return direct_sum(U, U, U, e8(), e8())


def standard_lattice(n):
    """Z^n with the dot product; used as fiber lattice and its dual."""
    return Lattice([[int(i == j) for j in range(n)] for i in range(n)],
                   flags={"unimodular"})


# -- sublattices and isometries ----------------------------------------------

@dataclass(frozen=True)
class Sublattice:
    """Sublattice of ``ambient`` spanned by independent integer vectors."""

    ambient: Lattice
    basis: tuple

    def __post_init__(self):
        basis = tuple(self.ambient.check(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if basis and len(intlin.invariant_factors([list(b) for b in basis], self.ambient.rank)) != len(basis):
            raise DependentBasisError("sublattice basis is linearly dependent")

    @property
    def rank(self):
        return len(self.basis)

    def canonical(self):
        """Basis in Hermite normal form (equal sublattices give equal output)."""
        return tuple(tuple(r) for r in intlin.hnf_rows([list(b) for b in self.basis], self.ambient.rank))

    def index(self):
        """Index in its saturation."""
        out = 1
        for d in intlin.invariant_factors([list(b) for b in self.basis], self.ambient.rank):
            out *= d
        return out

    def is_saturated(self):
        return self.index() == 1

    def gram(self):
        return tuple(tuple(self.ambient.pair(u, v) for v in self.basis) for u in self.basis)

    def contains(self, v):
        v = self.ambient.check(v)
        if not self.basis:
            return not any(v)
        rows = [list(b) for b in self.basis]
        grown = intlin.hnf_rows(rows + [list(v)], self.ambient.rank)
        return grown == [list(r) for r in self.canonical()]

    def same_as(self, other):
        return self.canonical() == other.canonical()

    def __eq__(self, other):
        if not isinstance(other, Sublattice):
            return NotImplemented
        return self.ambient == other.ambient and self.same_as(other)

    def __hash__(self):
        return hash((self.ambient, self.canonical()))


@dataclass(frozen=True)
class Isometry:
    """Integer matrix acting on coordinate columns: x -> matrix * x."""

    lattice: Lattice
    matrix: tuple

    def __post_init__(self):
        M = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", M)

    def __call__(self, v):
        v = self.lattice.check(v)
        return tuple(intlin.matvec(self.matrix, v))

    def is_isometry(self):
        M = [list(r) for r in self.matrix]
        G = [list(r) for r in self.lattice.gram]
        preserves = intlin.matmul(intlin.matmul(intlin.transpose(M), G), M) == G
        return preserves and abs(intlin.determinant(M)) == 1

    def compose(self, other):
        """self after other."""
        return Isometry(self.lattice, intlin.matmul([list(r) for r in self.matrix],
                                                    [list(r) for r in other.matrix]))

    def inverse(self):
        return Isometry(self.lattice, intlin.unimodular_inverse([list(r) for r in self.matrix]))


def identity_isometry(L):
    return Isometry(L, intlin.identity(L.rank))


# -- operations ---------------------------------------------------------------

def pair(L, u, v):
    return L.pair(u, v)


def is_primitive(L, v):
    v = L.check(v)
    if not any(v):
        raise ZeroVectorError("zero vector has no primitivity")
    return intlin.content(v) == 1


def is_isotropic(L, v):
    return L.norm(v) == 0


def saturate(S):
    if not S.basis:
        return S
    try:
        rows = intlin.saturate_rows([list(b) for b in S.basis], S.ambient.rank)
    except ValueError as exc:
        raise DependentBasisError(str(exc)) from None
    return Sublattice(S.ambient, tuple(tuple(r) for r in rows))


def orthogonal_complement(L, v):
    """Saturated sublattice {x : pair(x, v) = 0}."""
    v = L.check(v)
    if not any(v):
        raise ZeroVectorError("complement of the zero vector")
    return _complement(L, [v])


def _complement(L, vectors):
    rows = [list(L.gv(v)) for v in vectors]
    return Sublattice(L, tuple(tuple(r) for r in intlin.integer_kernel(rows, L.rank)))


def _require_primitive_isotropic(L, v):
    if not is_primitive(L, v):
        raise NotPrimitiveError(f"{v} is not primitive")
    if not is_isotropic(L, v):
        raise NotIsotropicError(f"{v} has self-pairing {L.norm(v)}")


def quotient_basis(L, v):
    """Lifts b_1..b_{n-2} in v-perp whose images form a basis of v-perp / Zv."""
    v = L.check(v)
    _require_primitive_isotropic(L, v)
    g, _ = intlin.vector_xgcd(L.gv(v))
    if g == 1:
        # pair(v, .) is onto: v-perp = Zv + <v, w>-perp for any partner w.
        w = find_dual_partner(L, v)
        return _complement(L, [v, w]).canonical()
    comp = orthogonal_complement(L, v)
    B = [list(b) for b in comp.basis]
    # coordinates of v in the complement basis
    coords = _solve_integer(B, list(v))
    T = intlin.complete_primitive(coords)
    lifts = intlin.matmul(T[1:], B)
    return tuple(tuple(r) for r in intlin.hnf_rows(lifts, L.rank)) if lifts else ()


def _solve_integer(B, v):
    """Integer c with c * B == v, for B with independent rows."""
    from . import ratlin
    x = ratlin.solve(ratlin.transpose(ratlin.qmat(B)), v)
    if x is None or any(c.denominator != 1 for c in x):
        raise ValueError("vector is not in the integer span")
    return [int(c) for c in x]


def induced_gram(L, lifts):
    return tuple(tuple(L.pair(a, b) for b in lifts) for a in lifts)


def quotient_by_isotropic(L, v):
    """The lattice v-perp / v with its induced pairing."""
    lifts = quotient_basis(L, v)
    flags = {"even"} if L.is_even() else set()
    Q = Lattice(induced_gram(L, lifts))
    if L.is_unimodular() and Q.is_unimodular():
        flags.add("unimodular")
    return Lattice(Q.gram, flags=flags)


def find_dual_partner(L, v):
    """Some w with pair(v, w) = 1."""
    v = L.check(v)
    if not any(v):
        raise ZeroVectorError("zero vector has no partner")
    g, coeffs = intlin.vector_xgcd(L.gv(v))
    if g != 1:
        raise NoPartnerError(f"pair({v}, .) has image {g}Z")
    return tuple(coeffs)


def isotropic_partner(L, t):
    """An isotropic t' with pair(t, t') = 1 (L even)."""
    w = find_dual_partner(L, t)
    c = L.norm(w)
    if c % 2:
        raise OrbitError("odd self-pairing; lattice is not even")
    return tuple(a - (c // 2) * b for a, b in zip(w, t))


def transvection(L, e, m):
    """Eichler transvection x -> x + (x.e) m - (x.m) e - (m.m/2)(x.e) e.

    Requires e isotropic, m orthogonal to e and m.m even.
    """
    n = L.rank
    ge, gm = L.gv(e), L.gv(m)
    half = L.norm(m) // 2
    cols = []
    for i in range(n):
        xe, xm = ge[i], gm[i]
        col = [int(i == k) + xe * m[k] - xm * e[k] - half * xe * e[k] for k in range(n)]
        cols.append(col)
    return Isometry(L, intlin.transpose(cols))


def _plane_action(L, t, tp, f, fp, P, Q):
    """Isometry acting on <t,t'> + <f,f'> as X -> P X Q (identity on the rest).

    x = a t + b t' + c f + d f' + k  corresponds to  X = [[a, -c], [d, b]].
    """
    n = L.rank
    gt, gtp, gf, gfp = L.gv(t), L.gv(tp), L.gv(f), L.gv(fp)

    def m2(A, B):
        return [[A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]],
                [A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]]]

    cols = []
    for i in range(n):
        a, b, c, d = gtp[i], gt[i], gfp[i], gf[i]
        X = m2(m2(P, [[a, -c], [d, b]]), Q)
        a2, c2, d2, b2 = X[0][0], -X[0][1], X[1][0], X[1][1]
        col = [int(i == k) + (a2 - a) * t[k] + (b2 - b) * tp[k] + (c2 - c) * f[k] + (d2 - d) * fp[k]
               for k in range(n)]
        cols.append(col)
    return Isometry(L, intlin.transpose(cols))


def _smith_2x2(X, full):
    """SL2 x SL2 reduction of a 2x2 integer matrix.

    Returns (P, Q) with P X Q = [[g, 0], [0, h]]; when ``full`` also g | h and
    g >= 0.
    """
    P = [[1, 0], [0, 1]]
    Q = [[1, 0], [0, 1]]
    X = [row[:] for row in X]

    def left(E):
        nonlocal X, P
        X = [[E[i][0] * X[0][j] + E[i][1] * X[1][j] for j in range(2)] for i in range(2)]
        P = [[E[i][0] * P[0][j] + E[i][1] * P[1][j] for j in range(2)] for i in range(2)]

    def right(E):
        nonlocal X, Q
        X = [[X[i][0] * E[0][j] + X[i][1] * E[1][j] for j in range(2)] for i in range(2)]
        Q = [[Q[i][0] * E[0][j] + Q[i][1] * E[1][j] for j in range(2)] for i in range(2)]

    rot_left = [[0, -1], [1, 0]]
    rot_right = [[0, 1], [-1, 0]]
    while True:
        entries = [(abs(X[i][j]), i, j) for i in range(2) for j in range(2) if X[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        if i == 1:
            left(rot_left)
        if j == 1:
            right(rot_right)
        p = X[0][0]
        if X[1][0]:
            left([[1, 0], [-(X[1][0] // p), 1]])
        if X[0][1]:
            right([[1, -(X[0][1] // p)], [0, 1]])
        if X[1][0] or X[0][1]:
            continue
        if full and X[1][1] % X[0][0]:
            left([[1, 1], [0, 1]])
            continue
        break
    if full and X[0][0] < 0:
        left([[-1, 0], [0, -1]])
    return P, Q, X


def _find_second_plane(L, t, tp):
    """Isotropic f, f' orthogonal to t, t' with pair(f, f') = 1, or None."""
    M = _complement(L, [t, tp])
    B = list(M.basis)
    gb = [L.gv(b) for b in B]

    def candidates():
        for b in B:
            yield b
        for i in range(len(B)):
            for j in range(i + 1, len(B)):
                for s in (1, -1):
                    yield tuple(x + s * y for x, y in zip(B[i], B[j]))

    for f in candidates():
        if L.norm(f) != 0 or not any(f):
            continue
        vals = [sum(a * b for a, b in zip(f, g)) for g in gb]
        g, coeffs = intlin.vector_xgcd(vals)
        if g != 1:
            continue
        w = tuple(sum(c * b[k] for c, b in zip(coeffs, B)) for k in range(L.rank))
        half = L.norm(w) // 2
        fp = tuple(a - half * b for a, b in zip(w, f))
        return f, fp
    return None


def isotropic_to_standard(L, v, t, t_partner=None):
    """An isometry g of the even unimodular lattice L with g(v) = t.

    Built from Eichler transvections and SL2 x SL2 moves on two orthogonal
    hyperbolic planes, the first of which is <t, t'>. ``t_partner`` fixes t';
    otherwise one is computed.
    """
    v = L.check(v)
    t = L.check(t)
    if not L.is_even():
        raise OrbitError("lattice is not even")
    if not L.is_unimodular():
        raise OrbitError("lattice is not unimodular")
    _require_primitive_isotropic(L, v)
    _require_primitive_isotropic(L, t)
    if v == t:
        return identity_isometry(L)
    tp = L.check(t_partner) if t_partner is not None else isotropic_partner(L, t)
    if L.pair(t, tp) != 1 or L.norm(tp) != 0:
        raise OrbitError("t_partner must be isotropic with pair(t, t') = 1")

    n = L.rank
    a, b = L.pair(v, tp), L.pair(v, t)
    rest = tuple(x - a * p - b * q for x, p, q in zip(v, t, tp))
    if not any(rest):
        # v lies in <t, t'>, so v is one of +-t, +-t'.
        g = identity_isometry(L)
        swap = _swap_plane(L, t, tp)
        if b != 0:
            g = swap
            a, b = b, 0
        if a == -1:
            g = _negate_plane(L, t, tp).compose(g)
        return _checked(L, g, v, t)

    plane = _find_second_plane(L, t, tp)
    if plane is None:
        raise OrbitError("no second hyperbolic plane found orthogonal to <t, t'>")
    f, fp = plane
    g = identity_isometry(L)
    cur = v

    def coords(x):
        return L.pair(x, tp), L.pair(x, t), L.pair(x, fp), L.pair(x, f)

    # 1. clear the f, f' coefficients
    a, b, c, d = coords(cur)
    P, Q, _ = _smith_2x2([[a, -c], [d, b]], full=False)
    h = _plane_action(L, t, tp, f, fp, P, Q)
    g, cur = h.compose(g), h(cur)

    # 2. move the divisibility of the K-part onto f
    a, b, c, d = coords(cur)
    k = tuple(x - a * p - b * q - c * r - d * s for x, p, q, r, s in zip(cur, t, tp, f, fp))
    if any(k):
        K = _complement(L, [t, tp, f, fp])
        vals = [L.pair(k, bb) for bb in K.basis]
        gk, coeffs = intlin.vector_xgcd(vals)
        k0 = tuple(-sum(cc * bb[i] for cc, bb in zip(coeffs, K.basis)) for i in range(n))
        h = transvection(L, f, k0)
        g, cur = h.compose(g), h(cur)

    # 3. now gcd of the plane coordinates is 1: reduce to a = 1, c = d = 0
    a, b, c, d = coords(cur)
    P, Q, X = _smith_2x2([[a, -c], [d, b]], full=True)
    if X[0][0] != 1:
        raise OrbitError("vector is not primitive in the unimodular lattice")
    h = _plane_action(L, t, tp, f, fp, P, Q)
    g, cur = h.compose(g), h(cur)

    # 4. kill the K-part with a transvection along t'
    a, b, c, d = coords(cur)
    k = tuple(x - a * p - b * q for x, p, q in zip(cur, t, tp))
    if any(k):
        h = transvection(L, tp, tuple(-x for x in k))
        g, cur = h.compose(g), h(cur)
    return _checked(L, g, v, t)


def _swap_plane(L, t, tp):
    """t <-> t' on the plane <t, t'>, identity on its complement."""
    gt, gtp = L.gv(t), L.gv(tp)
    cols = []
    for i in range(L.rank):
        a, b = gtp[i], gt[i]
        cols.append([int(i == k) + (b - a) * t[k] + (a - b) * tp[k] for k in range(L.rank)])
    return Isometry(L, intlin.transpose(cols))


def _negate_plane(L, t, tp):
    gt, gtp = L.gv(t), L.gv(tp)
    cols = []
    for i in range(L.rank):
        a, b = gtp[i], gt[i]
        cols.append([int(i == k) - 2 * a * t[k] - 2 * b * tp[k] for k in range(L.rank)])
    return Isometry(L, intlin.transpose(cols))


def _checked(L, g, v, t):
    if g(v) != t or not g.is_isometry():
        raise OrbitError("isometry construction failed verification")
    return g
