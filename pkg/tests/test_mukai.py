import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mirrorlat.errors import InvariantError, MirrorLatError, ZeroVectorError
from mirrorlat.lattice import hyperbolic_plane
from mirrorlat.mukai import (ChernInput, MukaiLattice, MukaiVector, PeriodPoint, check_period,
                             euler_pairing, k3_mukai_lattice, mirror_hodge_structure,
                             mirror_map_vector, moduli_dimension, mukai_pairing, mukai_vector,
                             rational_pair)

from gen import random_isotropic_mukai

K3 = k3_mukai_lattice()
ZERO = (0,) * 22
# an isotropic primitive class in the first U summand of H^2
MU = (1,) + (0,) * 21


def vec(a, beta, c):
    return MukaiVector(a, beta, c)


def test_structure_sheaf_vector():
    v = mukai_vector(ChernInput(rank=1, c1=ZERO, c2=0), K3)
    assert v == vec(1, ZERO, 1)


def test_ideal_sheaf_of_points():
    # I_Z for a length-n subscheme: rank 1, c2 = n, v = (1, 0, 1 - n)
    v = mukai_vector(ChernInput(rank=1, c1=ZERO, c2=3), K3)
    assert v == vec(1, ZERO, -2)
    assert moduli_dimension(K3, v) == 2 * 3


def test_line_bundle_vector():
    # L with c1^2 = 2 (c1 = e + f in U): v = (1, c1, 1 + 1)
    c1 = (1, 1) + (0,) * 20
    assert mukai_vector(ChernInput(1, c1, 0), K3) == vec(1, c1, 2)


def test_skyscraper_given_directly():
    p = K3.point_class()
    assert mukai_vector(ChernInput(mukai=p), K3) == p == vec(0, ZERO, 1)


def test_odd_h2_rejected():
    from mirrorlat.lattice import Lattice
    L = MukaiLattice(Lattice(((1,),)))
    with pytest.raises(InvariantError) as exc:
        mukai_vector(ChernInput(1, (1,), 0), L)
    assert exc.value.invariant == "even H^2"


def test_sign_coherence_structure_sheaf():
    v = vec(1, ZERO, 1)
    assert mukai_pairing(K3, v, v) == -2
    assert euler_pairing(K3, v, v) == 2
    assert moduli_dimension(K3, v) == 0


def test_dimension_two_for_isotropic_classes():
    assert moduli_dimension(K3, vec(0, MU, 0)) == 2
    assert moduli_dimension(K3, K3.point_class()) == 2


def test_zero_vector_has_no_moduli():
    with pytest.raises(ZeroVectorError):
        moduli_dimension(K3, vec(0, ZERO, 0))


@settings(max_examples=100, deadline=None)
@given(st.integers(-5, 5), st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-5, 5))
def test_dimension_even_and_chi_symmetric(a, beta, c):
    L = MukaiLattice(hyperbolic_plane())
    v = vec(a, beta, c)
    w = vec(c, beta[::-1], a)
    if not v.is_zero():
        assert moduli_dimension(L, v) % 2 == 0
    assert euler_pairing(L, v, w) == euler_pairing(L, w, v)


def test_mirror_map_examples():
    t = K3.coords(K3.point_class())
    e_plus_f = (1, 1) + (0,) * 20
    for v in (vec(1, ZERO, 0), vec(-1, ZERO, 0), vec(0, ZERO, -1), vec(0, MU, 0),
              vec(1, e_plus_f, 1)):
        assert K3.pair(v, v) == 0
        g = mirror_map_vector(K3, v)
        assert g(K3.coords(v)) == t
        assert g.is_isometry()


def test_mirror_map_random():
    rng = random.Random(7)
    t = K3.coords(K3.point_class())
    for _ in range(15):
        v = K3.vector(random_isotropic_mukai(rng, K3))
        g = mirror_map_vector(K3, v)
        assert g(K3.coords(v)) == t and g.is_isometry()


# -- periods ------------------------------------------------------------------

def k3_period():
    """Omega = (e1 + f1) + i (e2 + f2) in Mukai coordinates."""
    re = [0] * 24
    im = [0] * 24
    re[1] = re[2] = 1
    im[3] = im[4] = 1
    return PeriodPoint(re, im)


def test_period_invariants():
    omega = k3_period()
    check_period(K3.lattice, omega)
    bad = PeriodPoint(omega.re, [2 * x for x in omega.im])
    with pytest.raises(InvariantError) as exc:
        check_period(K3.lattice, bad)
    assert exc.value.invariant == "period isotropic"
    neg = PeriodPoint([0] * 24, [0] * 24)
    with pytest.raises(InvariantError) as exc:
        check_period(K3.lattice, neg)
    assert exc.value.invariant == "period positive"


def test_mirror_hodge_structure_point_class():
    omega = k3_period()
    Q, image = mirror_hodge_structure(K3, omega, K3.point_class())
    assert Q.rank == 22
    assert rational_pair(Q, image.re, image.re) == rational_pair(Q, image.im, image.im) == 2
    assert rational_pair(Q, image.re, image.im) == 0


def test_mirror_hodge_structure_isotropic_fiber():
    # v = (0, f3, 0) with f3 in the third U summand is orthogonal to Omega
    beta = [0] * 22
    beta[5] = 1
    v = vec(0, tuple(beta), 0)
    Q, image = mirror_hodge_structure(K3, k3_period(), v)
    assert Q.rank == 22 and abs(Q.det()) == 1
    check_period(Q, image)


def test_mirror_hodge_structure_rejects_non_orthogonal():
    v = vec(0, (1,) + (0,) * 21, 0)
    with pytest.raises(MirrorLatError):
        mirror_hodge_structure(K3, k3_period(), v)


def test_rational_periods_allowed():
    re = [Fraction(0)] * 24
    im = [Fraction(0)] * 24
    re[1], re[2] = Fraction(1, 2), Fraction(1)
    im[3], im[4] = Fraction(1, 2), Fraction(1)
    Q, image = mirror_hodge_structure(K3, PeriodPoint(re, im), K3.point_class())
    assert rational_pair(Q, image.re, image.re) == 1
