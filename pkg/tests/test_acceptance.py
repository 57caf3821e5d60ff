"""End-to-end acceptance suite.

Each test prints one ``criterion N ...: PASS|FAIL`` line to the terminal,
even when pytest captures output.
"""

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import sympy as sp

from mirrorlat import cli, intlin, io, ratlin
from mirrorlat.avhs import (ConnectionPresentation, amodel_presentation, associativity_check,
                            connection_operator, flatness_check, griffiths_check, residue)
from mirrorlat.lattice import transvection
from mirrorlat.mukai import (MukaiVector, PeriodPoint, euler_pairing, k3_mukai_lattice,
                             mirror_hodge_structure, mirror_map_vector, moduli_dimension,
                             rational_pair)
from mirrorlat.series import TruncatedSeries, smat_at_zero, smat_const
from mirrorlat.tduality import PureCycle, annihilator, double_dual, t_dual_cycle
from mirrorlat.weights import weight_filtration

import oracles
from fixtures import nonassociative_gw, rank4_gw, rank4_space
from gen import (SHAPES, random_gw, random_isotropic_mukai, random_isotropic_u3,
                 random_saturated)
from test_weights import random_nilpotent

DATA = Path(__file__).parent / "data"
K3 = k3_mukai_lattice()


@contextmanager
def criterion(capsys, number, title):
    ok = False
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            print(f"\ncriterion {number:>2} {title}: {'PASS' if ok else 'FAIL'}")


def mukai(alpha, beta, gamma):
    return MukaiVector(alpha, tuple(beta), gamma)


# -- 1 ------------------------------------------------------------------------

def test_c01_mukai_dimension(capsys):
    with criterion(capsys, 1, "Mukai dimension of (0, mu, 0)"):
        rng = random.Random(101)
        mus = [(1,) + (0,) * 21, (0, 0, 1, 0) + (0,) * 18]
        mus += [random_isotropic_u3(rng) + (0,) * 16 for _ in range(20)]
        start = time.perf_counter()
        for mu in mus:
            assert intlin.content(mu) == 1 and K3.h2.pair(mu, mu) == 0
            assert moduli_dimension(K3, mukai(0, mu, 0)) == 2
        assert time.perf_counter() - start < 1.0


# -- 2 ------------------------------------------------------------------------

def test_c02_sign_coherence(capsys):
    with criterion(capsys, 2, "sign coherence for the structure sheaf"):
        O = mukai(1, (0,) * 22, 1)
        # chi(O, O) = h^0 - h^1 + h^2 with h^{0,q}(K3) = (1, 0, 1)
        h0q = (1, 0, 1)
        chi = sum((-1) ** q * h for q, h in enumerate(h0q))
        assert euler_pairing(K3, O, O) == chi == 2
        assert moduli_dimension(K3, O) == 0


# -- 3 ------------------------------------------------------------------------

def test_c03_mirror_map_orbit(capsys):
    with criterion(capsys, 3, "mirror map on 120 random isotropic vectors"):
        rng = random.Random(303)
        t = K3.coords(K3.point_class())
        G = [list(r) for r in K3.lattice.gram]
        start = time.perf_counter()
        for _ in range(120):
            v = K3.vector(random_isotropic_mukai(rng, K3))
            g = mirror_map_vector(K3, v)
            M = [list(r) for r in g.matrix]
            assert g(K3.coords(v)) == t
            assert intlin.matmul(intlin.matmul(intlin.transpose(M), G), M) == G
        assert time.perf_counter() - start < 60


# -- 4 ------------------------------------------------------------------------

def _random_h2_isometry(rng, h2):
    """Product of random Eichler transvections on the U summands."""
    n = h2.rank
    g = intlin.identity(n)
    for _ in range(4):
        i = rng.randrange(6)
        e = [0] * n
        e[i] = 1
        m = [rng.randint(-2, 2) for _ in range(n)]
        m[i ^ 1] = 0  # e_i . m = m at the partner slot
        T = transvection(h2, tuple(e), tuple(m))
        g = intlin.matmul([list(r) for r in T.matrix], g)
    return g


def random_rational_period(rng):
    """Rotate and scale Omega_0 = (e1 + f1) + i (e2 + f2), then move it by an isometry."""
    h2 = K3.h2
    p0 = [Fraction(0)] * 22
    q0 = [Fraction(0)] * 22
    p0[0] = p0[1] = q0[2] = q0[3] = Fraction(1)
    a, b = rng.randint(0, 5), rng.randint(1, 5)
    c = Fraction(a * a - b * b, a * a + b * b)
    s = Fraction(2 * a * b, a * a + b * b)
    lam = Fraction(rng.randint(1, 7), rng.randint(1, 7))
    re = [lam * (c * x - s * y) for x, y in zip(p0, q0)]
    im = [lam * (s * x + c * y) for x, y in zip(p0, q0)]
    g = _random_h2_isometry(rng, h2)
    re, im = ratlin.matvec(g, re), ratlin.matvec(g, im)
    return [Fraction(0)] + re + [Fraction(0)], [Fraction(0)] + im + [Fraction(0)]


def admissible_vector(rng, re, im):
    """The point class, or (1, beta, beta^2 / 2) with beta integral and orthogonal to Omega."""
    if rng.random() < 0.25:
        return K3.point_class()
    h2 = K3.h2
    rows = []
    for part in (re[1:-1], im[1:-1]):
        den = 1
        for x in part:
            den = den * x.denominator // intlin.xgcd(den, x.denominator)[0]
        ints = [int(x * den) for x in part]
        rows.append(intlin.matvec([list(r) for r in h2.gram], ints))
    kernel = intlin.integer_kernel(rows, 22)
    beta = [0] * 22
    for k in kernel:
        c = rng.randint(-2, 2)
        beta = [x + c * y for x, y in zip(beta, k)]
    return mukai(1, beta, h2.pair(beta, beta) // 2)


def test_c04_mirror_hodge_structure(capsys):
    with criterion(capsys, 4, "mirror Hodge structure on 120 rational periods"):
        rng = random.Random(404)
        for _ in range(120):
            re, im = random_rational_period(rng)
            v = admissible_vector(rng, re, im)
            assert K3.pair(v, v) == 0
            Q, image = mirror_hodge_structure(K3, PeriodPoint(re, im), v)
            rr = rational_pair(Q, image.re, image.re)
            ii = rational_pair(Q, image.im, image.im)
            ri = rational_pair(Q, image.re, image.im)
            # Omega' . Omega' = (rr - ii) + 2i ri, Omega' . conj(Omega') = rr + ii
            assert rr - ii == 0 and ri == 0
            assert rr + ii > 0


# -- 5 ------------------------------------------------------------------------

def test_c05_flatness_iff_associativity(capsys):
    with criterion(capsys, 5, "flatness agrees with associativity on 200 instances"):
        rng = random.Random(505)
        start = time.perf_counter()
        for i in range(200):
            G = random_gw(rng, SHAPES)
            assert G.space.r <= 2 and G.space.total <= 6
            D = 1 + i % 4
            assert flatness_check(G, D) == associativity_check(G, D)
        assert time.perf_counter() - start < 300


# -- 6 ------------------------------------------------------------------------

def test_c06_residue_identity(capsys):
    with criterion(capsys, 6, "residues at q = 0 are the adjoint maps"):
        rng = random.Random(606)
        fixtures = [rank4_gw(), rank4_gw(phi_eee=-2, k=3), nonassociative_gw(),
                    io.parse_input(str(DATA / "toy.json")), io.parse_input(str(DATA / "nonassoc.json"))]
        fixtures += [random_gw(rng) for _ in range(20)]
        for G in fixtures:
            for j in range(G.space.r):
                for D in (1, 3):
                    assert smat_at_zero(connection_operator(G, j, D)) == G.space.ad(j) == residue(G, j)


# -- 7 ------------------------------------------------------------------------

def _sp(vectors, n):
    return sp.Matrix.hstack(*[sp.Matrix(n, 1, list(v)) for v in vectors]) if vectors else sp.zeros(n, 0)


def test_c07_weight_filtration(capsys):
    with criterion(capsys, 7, "monodromy weight filtration"):
        # homology grading H_{0,0} <= H_{0,0} + H_{1,1} <= ... ; H_{k,k} is dual to H^{n-k,n-k}
        S = rank4_space()
        W = weight_filtration(S.ad(0), center=3)
        top_down = [[3], [2, 3], [1, 2, 3], [0, 1, 2, 3]]
        for k, idx in enumerate(top_down):
            expected = [[Fraction(int(i == j)) for i in range(4)] for j in idx]
            assert oracles.same_span(_sp(expected, 4), W(2 * k))
            assert W(2 * k + 1) == W(2 * k)
        assert W(-1) == []

        rng = random.Random(707)
        for _ in range(60):
            n = rng.randint(1, 8)
            c = rng.randint(-2, 2)
            N, _ = random_nilpotent(rng, n)
            Nm = sp.Matrix(N)
            W = weight_filtration(N, c)

            def Wk(k):
                return _sp(W(k), n)

            for k in range(W.low - 1, W.high + 2):
                # N W_k inside W_{k-2}
                image = Nm * Wk(k)
                assert sp.Matrix.hstack(Wk(k - 2), image).rank() == Wk(k - 2).rank()
            for k in range(0, n + 1):
                gr_hi = Wk(c + k).rank() - Wk(c + k - 1).rank()
                low = Wk(c - k - 1)
                mapped = sp.Matrix.hstack(low, Nm ** k * Wk(c + k))
                assert mapped.rank() - low.rank() == gr_hi


# -- 8 ------------------------------------------------------------------------

def test_c08_annihilator_duality(capsys):
    with criterion(capsys, 8, "annihilator duality on 600 saturated sublattices"):
        rng = random.Random(808)
        for _ in range(600):
            n = rng.randint(1, 6)
            S = random_saturated(rng, n)
            A = annihilator(S)
            assert double_dual(S) == S
            assert A.rank + S.rank == n
            for a in A.basis:
                assert all(sum(x * y for x, y in zip(a, s)) == 0 for s in S.basis)
        for n in (1, 2, 3, 4):
            fiber = PureCycle.build(n, [tuple(int(i == j) for j in range(n)) for i in range(n)], 0)
            assert t_dual_cycle(fiber).degree == 0
            section = PureCycle.build(n, [], n)
            assert t_dual_cycle(section).degree == 2 * n
            for r in (2, 3, 5):
                multi = PureCycle.build(n, [], n, multiplicity=r)
                assert t_dual_cycle(multi).rank_hint == r


# -- 9 ------------------------------------------------------------------------

def test_c09_griffiths_transversality(capsys):
    with criterion(capsys, 9, "Griffiths transversality"):
        rng = random.Random(909)
        for i in range(40):
            G = random_gw(rng)
            assert griffiths_check(amodel_presentation(G, 1 + i % 3))
        for G in (rank4_gw(), nonassociative_gw()):
            assert griffiths_check(amodel_presentation(G, 2))

        P = amodel_presentation(rank4_gw(), 2)
        permuted = ConnectionPresentation(P.dim, P.nvars, P.cutoff, P.operators, P.filtration[::-1])
        assert not griffiths_check(permuted)

        ops = [list(map(list, M)) for M in P.operators]
        ops[0][2][0] = ops[0][2][0] + TruncatedSeries.variable(1, 2, 0)
        shifted = ConnectionPresentation(P.dim, P.nvars, P.cutoff, ops, P.filtration)
        assert not griffiths_check(shifted)

        M = [[Fraction(0)] * 4 for _ in range(4)]
        M[2][0] = Fraction(1)
        const = ConnectionPresentation(4, 1, 2, [smat_const(M, 1, 2)], rank4_space().hodge_filtration())
        assert not griffiths_check(const)


# -- 10 -----------------------------------------------------------------------

CLI_RUNS = [
    ["qcoh", "validate", "--in", DATA / "toy.json"],
    ["qcoh", "flat", "--in", DATA / "nonassoc.json"],
    ["qcoh", "weights", "--in", DATA / "toy.json"],
    ["qcoh", "compare", "--in", DATA / "compare_same.json"],
    ["lattice", "snf", "--matrix", "4,6;6,9"],
    ["mukai", "mirror", "--v", "1," + ",".join(["0"] * 22) + ",0"],
    ["tori", "dual", "--in", DATA / "cycles.json"],
    ["mirrortest", "hodge-numbers", "--x", "1,101", "--y", "101,1"],
    ["lattice", "pair", "--in", DATA / "syntax_error.json", "--u", "1,0", "--v", "0,1"],
]


def test_c10_determinism_and_roundtrips(capsys):
    with criterion(capsys, 10, "byte-reproducible CLI and identity round trips"):
        for argv in CLI_RUNS:
            for fmt in ("text", "machine"):
                runs = []
                for _ in range(2):
                    code = cli.main(["--format", fmt] + [str(a) for a in argv])
                    runs.append((code, *capsys.readouterr()))
                assert runs[0] == runs[1]
                if fmt == "machine" and runs[0][1]:
                    json.loads(runs[0][1])

        rng = random.Random(1010)
        values = [K3.lattice, K3.h2, K3.point_class(), rank4_gw(), nonassociative_gw(),
                  amodel_presentation(rank4_gw(), 2), PureCycle.build(3, [(2, 1, 0), (0, 0, 1)], 1)]
        for _ in range(15):
            G = random_gw(rng)
            values += [G, amodel_presentation(G, 2)]
            re, im = random_rational_period(rng)
            values.append(PeriodPoint(re, im))
            values.append(K3.vector(random_isotropic_mukai(rng, K3)))
        for x in values:
            text = io.emit_value(x)
            back = io.parse_input(text)
            assert back == x
            assert io.emit_value(back) == text
