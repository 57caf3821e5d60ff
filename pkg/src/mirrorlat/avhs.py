"""The A-model variation of Hodge structure over truncated formal series.

The graded space is H = sum_l H^{l,l}, with a basis ordered by degree l and
the unit class 1 as basis element 0. Cup product is given by the classical
triple intersection numbers cup(A, B, C) = int A u B u C, which also fix the
Poincare pairing P(A, B) = cup(1, A, B).

Connections are stored as operators N_j(q) in the logarithmic directions
q_j d/dq_j with the global 2 pi i absorbed, so flat sections s satisfy
theta_j s + N_j s = 0 and every coefficient stays rational.

For effective classes eta the weight q^eta / (1 - q^eta) multiplies the
Gromov-Witten contribution, both in the connection and in the quantum
product, so that e^j * A = N_j(q) A exactly.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from . import ratlin
from .errors import DegeneratePairingError, DimensionMismatch, InvariantError, MirrorLatError
from .series import (TruncatedSeries, monomials, smat_add, smat_apply, smat_at_zero,
                     smat_commutator, smat_const, smat_inverse, smat_mul, smat_sub,
                     smat_theta, smat_zero)


def _symmetric_closure(entries):
    """Expand {(a, b, c): value} to all permutations; raise on conflicts."""
    out = {}
    for key, val in entries.items():
        val = Fraction(val)
        for perm in set(permutations(key)):
            if perm in out and out[perm] != val:
                raise InvariantError("phi symmetric", f"conflicting values at {perm}")
            out[perm] = val
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class GradedSpace:
    n: int
    dims: tuple
    cup: dict = field(hash=False, compare=True)
    labels: tuple = None

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) != self.n + 1:
            raise InvariantError("graded dimensions", f"need {self.n + 1} entries, got {len(dims)}")
        if dims[0] != 1:
            raise InvariantError("dim H^{0,0} = 1")
        if any(d < 0 for d in dims):
            raise InvariantError("graded dimensions", "negative dimension")
        cup = _symmetric_closure(self.cup)
        object.__setattr__(self, "cup", cup)
        N = self.total
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"x{i}" for i in range(N)))
        elif len(self.labels) != N:
            raise InvariantError("labels length")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        for (a, b, c) in cup:
            if max(a, b, c) >= N or min(a, b, c) < 0:
                raise InvariantError("cup index", f"{(a, b, c)} out of range")
            if self.degree(a) + self.degree(b) + self.degree(c) != self.n:
                raise InvariantError("cup degree", f"{(a, b, c)} does not have total degree {self.n}")
        P = self.pairing()
        try:
            inv = ratlin.inverse(P) if N else []
        except ZeroDivisionError:
            raise InvariantError("perfect pairing", "Poincare pairing is degenerate") from None
        object.__setattr__(self, "_pinv", inv)

    @property
    def total(self):
        return sum(self.dims)

    @property
    def r(self):
        return self.dims[1] if self.n >= 1 else 0

    def degree(self, i):
        acc = 0
        for l, d in enumerate(self.dims):
            acc += d
            if i < acc:
                return l
        raise IndexError(i)

    def indices(self, l):
        start = sum(self.dims[:l])
        return list(range(start, start + self.dims[l]))

    def framing(self):
        """Basis indices of e^1..e^r."""
        return self.indices(1)

    def pairing(self):
        N = self.total
        return [[self.cup.get((0, a, b), Fraction(0)) for b in range(N)] for a in range(N)]

    def pairing_inverse(self):
        return self._pinv

    def dual_coords(self, values):
        """Vector X with X . C = values[C] for every basis C."""
        return ratlin.matvec(ratlin.transpose(self._pinv), values)

    def cup_product(self, a, b):
        """Coordinates of basis a u basis b."""
        N = self.total
        return self.dual_coords([self.cup.get((a, b, c), Fraction(0)) for c in range(N)])

    def ad(self, j):
        """Matrix of A -> e^j u A (columns are images of basis vectors)."""
        e = self.framing()[j]
        cols = [self.cup_product(e, a) for a in range(self.total)]
        return ratlin.transpose(cols)

    def hodge_filtration(self):
        """E^p = sum_{l <= n-p} H^{l,l}, for p = 0..n."""
        N = self.total
        levels = []
        for p in range(self.n + 1):
            idx = [i for i in range(N) if self.degree(i) <= self.n - p]
            levels.append(tuple(tuple(Fraction(int(i == k)) for k in range(N)) for i in idx))
        return tuple(levels)


def check_effective(eta, r):
    eta = tuple(int(x) for x in eta)
    if len(eta) != r:
        raise InvariantError("effective class", f"{eta} needs {r} exponents")
    if any(x < 0 for x in eta) or not any(eta):
        raise InvariantError("effective class", f"{eta} must be nonnegative and nonzero")
    return eta


@dataclass(frozen=True)
class GWData:
    """Graded space, framing and the invariants Phi0_eta."""

    space: GradedSpace
    phi: dict = field(hash=False)

    def __post_init__(self):
        r = self.space.r
        clean = {}
        for eta, entries in self.phi.items():
            eta = check_effective(eta, r)
            clean[eta] = {tuple(k): Fraction(v) for k, v in entries.items() if Fraction(v)}
        object.__setattr__(self, "phi", dict(sorted(clean.items())))

    def value(self, eta, a, b, c):
        return self.phi.get(eta, {}).get((a, b, c), Fraction(0))


def phi_problems(G):
    """Diagnostics for validate_phi; empty list means the data are valid."""
    S = G.space
    N = S.total
    frame = S.framing()
    problems = []
    for eta, entries in G.phi.items():
        for key, val in entries.items():
            a, b, c = key
            if max(key) >= N or min(key) < 0:
                problems.append(f"eta={eta}: index {key} out of range")
                continue
            for perm in set(permutations(key)):
                if entries.get(perm, Fraction(0)) != val:
                    problems.append(f"eta={eta}: not symmetric at {key} vs {perm}")
                    break
            if S.degree(a) + S.degree(b) + S.degree(c) != S.n:
                problems.append(f"eta={eta}: {key} violates the degree constraint")
            if 0 in key:
                problems.append(f"eta={eta}: {key} involves the unit class")
        for a in range(N):
            for b in range(N):
                ratios = []
                for j, C in enumerate(frame):
                    val = entries.get((a, b, C), Fraction(0))
                    if eta[j] == 0:
                        if val:
                            problems.append(f"eta={eta}: Phi({a},{b},{C}) != 0 although eta.C = 0")
                        continue
                    ratios.append((C, val / eta[j]))
                if len({q for _, q in ratios}) > 1:
                    problems.append(f"eta={eta}: Phi({a},{b},C)/(eta.C) depends on C: "
                                    + ", ".join(f"C={C}: {q}" for C, q in ratios))
    return problems


def validate_phi(G):
    return not phi_problems(G)


def _require_valid(G):
    problems = phi_problems(G)
    if problems:
        raise InvariantError("valid GW data", problems[0])


def _gamma(G, eta):
    S = G.space
    N = S.total
    frame = S.framing()
    j = next((j for j, e in enumerate(eta) if e), None)
    if j is None:
        raise DegeneratePairingError("eta.C = 0 for every C in the framing")
    C, ec = frame[j], eta[j]
    cols = []
    for a in range(N):
        vals = [G.value(eta, a, b, C) / ec for b in range(N)]
        cols.append(S.dual_coords(vals))
    return ratlin.transpose(cols)


def gamma_from_phi(G, eta):
    """Gamma_eta with Gamma_eta(A) . B = Phi0_eta(A, B, C) / (eta . C)."""
    _require_valid(G)
    eta = check_effective(eta, G.space.r)
    return _gamma(G, eta)


def residue(G, j):
    """Residue of the connection along q_j = 0: ad(e^j)."""
    return G.space.ad(j)


def _weight(G, eta, D):
    return TruncatedSeries.geometric(G.space.r, D, eta)


def connection_operator(G, j, D):
    """N_j(q) = ad(e^j) + sum_eta e^j(eta) q^eta/(1 - q^eta) Gamma_eta."""
    _require_valid(G)
    return _connection_operator(G, j, D)


def _connection_operator(G, j, D):
    S = G.space
    r = S.r
    N = smat_const(S.ad(j), r, D)
    for eta in G.phi:
        if eta[j] == 0 or sum(eta) > D:
            continue
        w = _weight(G, eta, D) * eta[j]
        Gam = _gamma(G, eta)
        N = [[x + w * g for x, g in zip(row, grow)] for row, grow in zip(N, Gam)]
    return N


def _product_table(G, D):
    """T[a][b] = coordinates (as series) of basis a * basis b."""
    S = G.space
    N, r = S.total, S.r
    weights = {eta: _weight(G, eta, D) for eta in G.phi if sum(eta) <= D}
    Pinv_t = ratlin.transpose(S.pairing_inverse())
    T = []
    for a in range(N):
        row = []
        for b in range(N):
            vals = []
            for c in range(N):
                s = TruncatedSeries.constant(r, D, S.cup.get((a, b, c), 0))
                for eta, w in weights.items():
                    v = G.value(eta, a, b, c)
                    if v:
                        s = s + w * v
                vals.append(s)
            coords = []
            for x in range(N):
                acc = TruncatedSeries(r, D)
                for c in range(N):
                    if Pinv_t[x][c] and not vals[c].is_zero():
                        acc = acc + vals[c] * Pinv_t[x][c]
                coords.append(acc)
            row.append(coords)
        T.append(row)
    return T


def quantum_product(G, A, B, D):
    """A * B as a vector of truncated series.

    (A * B) . C = (A u B) . C + sum_eta Phi0_eta(A, B, C) q^eta/(1 - q^eta).
    """
    _require_valid(G)
    S = G.space
    N = S.total
    A = [Fraction(x) for x in A]
    B = [Fraction(x) for x in B]
    if len(A) != N or len(B) != N:
        raise DimensionMismatch("class has wrong length")
    T = _product_table(G, D)
    out = [TruncatedSeries(S.r, D) for _ in range(N)]
    for a in range(N):
        for b in range(N):
            if A[a] and B[b]:
                coef = A[a] * B[b]
                out = [o + t * coef for o, t in zip(out, T[a][b])]
    return out


def _series_vec_product(T, u, v, N):
    """Product of two series-valued vectors using the table T."""
    r, D = u[0].nvars, u[0].cutoff
    out = [TruncatedSeries(r, D) for _ in range(N)]
    for a in range(N):
        if u[a].is_zero():
            continue
        for b in range(N):
            if v[b].is_zero():
                continue
            coef = u[a] * v[b]
            out = [o + t * coef for o, t in zip(out, T[a][b])]
    return out


def associativity_defect(G, D):
    """First (a, b, c, exponent, coordinate) where (a*b)*c != a*(b*c), or None."""
    S = G.space
    N, r = S.total, S.r
    T = _product_table(G, D)
    basis = [[TruncatedSeries.constant(r, D, int(i == k)) for k in range(N)] for i in range(N)]
    for a in range(N):
        for b in range(N):
            ab = T[a][b]
            for c in range(N):
                lhs = _series_vec_product(T, ab, basis[c], N)
                rhs = _series_vec_product(T, basis[a], T[b][c], N)
                for x in range(N):
                    diff = lhs[x] - rhs[x]
                    if not diff.is_zero():
                        exp, val = diff.items()[0]
                        return {"a": a, "b": b, "c": c, "monomial": exp, "coordinate": x, "value": val}
    return None


def associativity_check(G, D):
    _require_valid(G)
    return associativity_defect(G, D) is None


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class ConnectionPresentation:
    """Operators N_j(q) (j = 1..nvars) on Q^dim and a decreasing filtration.

    ``filtration[p]`` is a tuple of spanning vectors of F^p.
    """

    dim: int
    nvars: int
    cutoff: int
    operators: tuple = field(hash=False)
    filtration: tuple = field(hash=False)

    def __post_init__(self):
        ops = tuple(tuple(tuple(row) for row in M) for M in self.operators)
        if len(ops) != self.nvars:
            raise InvariantError("operator count", f"{len(ops)} operators for {self.nvars} variables")
        for M in ops:
            if len(M) != self.dim or any(len(row) != self.dim for row in M):
                raise InvariantError("operator shape", f"operators must be {self.dim}x{self.dim}")
            for row in M:
                for s in row:
                    if s.nvars != self.nvars or s.cutoff != self.cutoff:
                        raise InvariantError("operator series", "wrong variables or cutoff")
        filt = tuple(tuple(tuple(Fraction(x) for x in v) for v in level) for level in self.filtration)
        for level in filt:
            for v in level:
                if len(v) != self.dim:
                    raise InvariantError("filtration vector length")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "filtration", filt)

    def op(self, j):
        return [list(row) for row in self.operators[j]]

    def residues(self):
        return [smat_at_zero(self.op(j)) for j in range(self.nvars)]

    def truncate(self, D):
        if D > self.cutoff:
            raise ValueError(f"cannot raise cutoff {self.cutoff} to {D}")
        ops = [[[truncate(s, D) for s in row] for row in self.op(j)] for j in range(self.nvars)]
        return ConnectionPresentation(self.dim, self.nvars, D, ops, self.filtration)


def truncate(s, D):
    return TruncatedSeries(s.nvars, D, dict(s.items()))


def amodel_presentation(G, D):
    """The framed A-variation: operators N_j and the filtration E^p."""
    _require_valid(G)
    S = G.space
    ops = [_connection_operator(G, j, D) for j in range(S.r)]
    return ConnectionPresentation(S.total, S.r, D, ops, S.hodge_filtration())


def flatness_defect(P, D=None):
    """First failing curvature entry of theta_i + N_i, theta_j + N_j, or None.

    Curvature component (i < j): theta_i N_j - theta_j N_i + [N_i, N_j].
    """
    if D is not None and D < P.cutoff:
        P = P.truncate(D)
    for i in range(P.nvars):
        for j in range(i + 1, P.nvars):
            Ni, Nj = P.op(i), P.op(j)
            F = smat_add(smat_sub(smat_theta(Nj, i), smat_theta(Ni, j)), smat_commutator(Ni, Nj))
            for exp in monomials(P.nvars, P.cutoff):
                for x, row in enumerate(F):
                    for y, s in enumerate(row):
                        val = s.coeff(exp)
                        if val:
                            return {"i": i, "j": j, "monomial": exp, "row": x, "col": y, "value": val}
    return None


def flatness_check(G, D):
    return flatness_defect(amodel_presentation(G, D)) is None


def _nests(filtration, n):
    for p in range(1, len(filtration)):
        if not ratlin.is_subspace(filtration[p], filtration[p - 1], n):
            return False
    return True


def griffiths_defect(P, D=None):
    """Why N_j(q) F^p is not inside F^{p-1} (string), or None when it is."""
    n = P.dim
    F = [ratlin.span([list(v) for v in level], n) for level in P.filtration]
    if not _nests(F, n):
        return "filtration levels do not nest"
    D = P.cutoff if D is None else min(D, P.cutoff)
    for j in range(P.nvars):
        Nj = P.op(j)
        for p in range(1, len(F)):
            for v in F[p]:
                images = smat_apply(Nj, v)
                for exp in monomials(P.nvars, D):
                    w = [s.coeff(exp) for s in images]
                    if any(w) and not ratlin.contains(F[p - 1], w, n):
                        return f"N_{j + 1} maps F^{p} outside F^{p - 1} at q^{exp}"
    return None


def griffiths_check(P, D=None):
    return griffiths_defect(P, D) is None


# -- mirror tests ------------------------------------------------------------

@dataclass(frozen=True)
class HodgeDiamond:
    n: int
    table: tuple

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        n = self.n
        if len(t) != n + 1 or any(len(row) != n + 1 for row in t):
            raise InvariantError("diamond shape", f"need a {n + 1}x{n + 1} table")
        for p in range(n + 1):
            for q in range(n + 1):
                if t[p][q] != t[q][p]:
                    raise InvariantError("h^{p,q} = h^{q,p}", f"at ({p},{q})")
                if t[p][q] != t[n - p][n - q]:
                    raise InvariantError("h^{p,q} = h^{n-p,n-q}", f"at ({p},{q})")
        object.__setattr__(self, "table", t)

    def h(self, p, q):
        return self.table[p][q]


def calabi_yau_diamond(n, h11, hn11=None):
    """Hodge diamond of a Calabi-Yau surface (K3) or threefold."""
    if n == 2:
        if hn11 is not None and hn11 != h11:
            raise InvariantError("h^{1,1} = h^{n-1,1}", "for n = 2 these coincide")
        return HodgeDiamond(2, ((1, 0, 1), (0, h11, 0), (1, 0, 1)))
    if n == 3:
        return HodgeDiamond(3, ((1, 0, 0, 1), (0, h11, hn11, 0), (0, hn11, h11, 0), (1, 0, 0, 1)))
    raise ValueError("only n = 2 and n = 3 diamonds are built in; pass a full table")


def topological_mirror_test(hX, hY):
    """h^{n-1,1}(X) = h^{1,1}(Y) and h^{1,1}(X) = h^{n-1,1}(Y)."""
    if hX.n != hY.n:
        raise DimensionMismatch(f"dimensions {hX.n} and {hY.n} differ")
    n = hX.n
    return hX.h(n - 1, 1) == hY.h(1, 1) and hX.h(1, 1) == hY.h(n - 1, 1)


def _boundary_coordinate_units(coord_map):
    """Given p_i(q) = q_i u_i(q), return the unit series u_i."""
    units = []
    for i, p in enumerate(coord_map):
        if p.const() != 0:
            raise MirrorLatError(f"coordinate map component {i + 1} has a constant term")
        coeffs = {}
        for exp, val in p.items():
            if exp[i] == 0:
                raise MirrorLatError(f"coordinate map component {i + 1} is not divisible by q_{i + 1}")
            e = list(exp)
            e[i] -= 1
            coeffs[tuple(e)] = val
        u = TruncatedSeries(p.nvars, p.cutoff, coeffs)
        if u.const() == 0:
            raise MirrorLatError(f"coordinate map component {i + 1} has a degenerate linear term")
        units.append(u)
    return units


def pullback(P, coord_map):
    """Operators of P pulled back along p_i = coord_map[i](q)."""
    units = _boundary_coordinate_units(coord_map)
    r = P.nvars
    D = coord_map[0].cutoff
    NB = [[[s.compose(coord_map) for s in row] for row in P.op(i)] for i in range(r)]
    dlog = [[u.theta(j) * u.inverse() for j in range(r)] for u in units]
    pulled = []
    for j in range(r):
        M = smat_zero(P.dim, P.dim, r, D)
        for i in range(r):
            coef = dlog[i][j] + (1 if i == j else 0)
            M = smat_add(M, [[coef * s for s in row] for row in NB[i]])
        pulled.append(M)
    return ConnectionPresentation(P.dim, r, D, pulled, P.filtration)


def vhs_isomorphism_defect(PA, PB, gauge, coord_map, D, levels=None):
    """Why ``gauge`` fails to identify PA with PB pulled back, or None.

    Checks theta_j g + N^A_j g - g N^B*_j = 0 to degree D for all j, and
    g F_B^p = F_A^p for each designated level p.
    """
    if PA.dim != PB.dim or PA.nvars != PB.nvars:
        raise DimensionMismatch("presentations have different shapes")
    if len(coord_map) != PB.nvars:
        raise DimensionMismatch("coordinate map needs one series per variable")
    n, r = PA.dim, PA.nvars
    if len(gauge) != n or any(len(row) != n for row in gauge):
        raise DimensionMismatch("gauge has wrong shape")
    if min(PA.cutoff, PB.cutoff, gauge[0][0].cutoff, coord_map[0].cutoff) < D:
        raise ValueError(f"all inputs must be known to degree {D}")
    A = PA.truncate(D)
    B = PB.truncate(D)
    g = [[truncate(s, D) for s in row] for row in gauge]
    phi = [truncate(s, D) for s in coord_map]
    try:
        ginv = smat_inverse(g)
    except ZeroDivisionError:
        raise MirrorLatError("gauge is not invertible at q = 0") from None
    Bstar = pullback(B, phi)
    for j in range(r):
        lhs = smat_add(smat_theta(g, j), smat_mul(A.op(j), g))
        diff = smat_sub(lhs, smat_mul(g, Bstar.op(j)))
        for exp in monomials(r, D):
            for x, row in enumerate(diff):
                for y, s in enumerate(row):
                    if s.coeff(exp):
                        return f"gauge does not intertwine direction {j + 1} at q^{exp}, entry ({x},{y})"
    if levels is None:
        levels = range(min(len(A.filtration), len(B.filtration)))
    for p in levels:
        FA = ratlin.span([list(v) for v in A.filtration[p]], n)
        FB = ratlin.span([list(v) for v in B.filtration[p]], n)
        for src, dst, M, name in ((FB, FA, g, "g F_B"), (FA, FB, ginv, "g^-1 F_A")):
            for v in src:
                for exp_vec in _coefficients(smat_apply(M, v), r, D):
                    if not ratlin.contains(dst, exp_vec, n):
                        return f"{name}^{p} is not contained in the matching level"
    return None


def _coefficients(vec, r, D):
    for exp in monomials(r, D):
        w = [s.coeff(exp) for s in vec]
        if any(w):
            yield w


def vhs_isomorphism_check(PA, PB, gauge, coord_map, D, levels=None):
    return vhs_isomorphism_defect(PA, PB, gauge, coord_map, D, levels) is None
