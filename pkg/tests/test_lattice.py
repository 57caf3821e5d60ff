import random

import pytest
from hypothesis import given, settings, strategies as st

from mirrorlat import intlin
from mirrorlat.errors import (DependentBasisError, DimensionMismatch, InvariantError,
                              NoPartnerError, NotIsotropicError, NotPrimitiveError,
                              OrbitError, ZeroVectorError)
from mirrorlat.lattice import (Lattice, Sublattice, direct_sum, e8, find_dual_partner,
                               hyperbolic_plane, identity_isometry, is_primitive,
                               isotropic_partner, isotropic_to_standard, k3_lattice,
                               orthogonal_complement, quotient_basis, quotient_by_isotropic,
                               saturate, standard_lattice, transvection)
from mirrorlat.mukai import MukaiLattice, k3_mukai_lattice

from gen import random_isotropic_mukai, random_isotropic_u3

MUKAI_PLANE = Lattice(((0, -1), (-1, 0)))
U = hyperbolic_plane()
U3 = direct_sum(U, U, U)


# -- Lattice ------------------------------------------------------------------

def test_asymmetric_gram_rejected():
    with pytest.raises(InvariantError) as exc:
        Lattice(((0, 1), (2, 0)))
    assert exc.value.invariant == "gram symmetric"


def test_flags_are_verified():
    with pytest.raises(InvariantError) as exc:
        Lattice(((2, 1), (1, 2)), flags={"unimodular"})
    assert exc.value.invariant == "unimodular"
    with pytest.raises(InvariantError):
        Lattice(((1,),), flags={"even"})


def test_builtin_lattices():
    assert e8().det() == 1 and e8().is_even()
    assert all(x == -2 for x in (e8().gram[i][i] for i in range(8)))
    K = k3_lattice()
    assert K.rank == 22 and K.det() == -1 and K.is_even()
    M = k3_mukai_lattice().lattice
    assert M.rank == 24 and M.det() == 1 and M.is_even()


def test_mukai_pairing_of_structure_sheaf():
    M = MukaiLattice(U).lattice
    assert M.pair((1, 0, 0, 1), (1, 0, 0, 1)) == -2


def test_pair_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        U.pair((1, 0), (1, 0, 0))


# -- sublattices --------------------------------------------------------------

def test_dependent_basis_rejected():
    with pytest.raises(DependentBasisError):
        Sublattice(standard_lattice(2), ((1, 2), (2, 4)))


def test_saturation_and_index():
    S = Sublattice(standard_lattice(3), ((2, 0, 0), (0, 3, 3)))
    assert S.index() == 6 and not S.is_saturated()
    T = saturate(S)
    assert T.is_saturated() and T.rank == 2
    assert T.contains((1, 0, 0)) and T.contains((0, 1, 1)) and not T.contains((0, 1, 0))


def test_sublattice_equality_ignores_basis_choice():
    Z3 = standard_lattice(3)
    assert Sublattice(Z3, ((1, 1, 0), (0, 1, 0))) == Sublattice(Z3, ((1, 0, 0), (0, 1, 0)))


def test_complement_in_u_plus_u():
    L = direct_sum(U, U)
    v = (1, 0, 0, 0)
    C = orthogonal_complement(L, v)
    assert C == Sublattice(L, ((1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    Q = quotient_by_isotropic(L, v)
    assert Q.gram == U.gram


def test_quotient_of_point_class_is_h2():
    # in the Mukai lattice, (0, 0, 1)-perp / (0, 0, 1) is H^2 itself
    M = k3_mukai_lattice()
    v = M.coords(M.point_class())
    lifts = quotient_basis(M.lattice, v)
    h2_slots = Sublattice(M.lattice, tuple(M.lattice.unit(i) for i in range(1, 23)))
    assert Sublattice(M.lattice, lifts) == h2_slots
    Q = quotient_by_isotropic(M.lattice, v)
    assert Q.det() == k3_lattice().det() and Q.is_even() and Q.rank == 22


def test_quotient_needs_primitive_isotropic():
    with pytest.raises(NotPrimitiveError):
        quotient_basis(U, (2, 0))
    with pytest.raises(NotIsotropicError):
        quotient_basis(U, (1, 1))
    with pytest.raises(ZeroVectorError):
        orthogonal_complement(U, (0, 0))


def test_quotient_without_partner():
    # U(2) + U: pair(v, .) has image 2Z for v in U(2)
    L = Lattice(((0, 2, 0, 0), (2, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)))
    v = (1, 0, 0, 0)
    with pytest.raises(NoPartnerError):
        find_dual_partner(L, v)
    lifts = quotient_basis(L, v)
    assert len(lifts) == 2
    assert all(L.pair(b, v) == 0 for b in lifts)
    assert quotient_by_isotropic(L, v).gram == U.gram


def test_dual_partner_in_mukai_plane():
    assert find_dual_partner(MUKAI_PLANE, (1, 0)) == (0, -1)


def test_isotropic_partner():
    L = direct_sum(U, e8())
    t = (1, 0) + (0,) * 8
    tp = isotropic_partner(L, t)
    assert L.pair(t, tp) == 1 and L.norm(tp) == 0


# -- isometries ---------------------------------------------------------------

def test_slot_swap_on_mukai_plane_plus_u():
    L = MukaiLattice(U).lattice
    g = isotropic_to_standard(L, (1, 0, 0, 0), (0, 0, 0, 1))
    assert g.matrix == ((0, 0, 0, 1), (0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0))
    assert g.is_isometry()


def test_standardize_identity_and_sign():
    L = MukaiLattice(U).lattice
    t = (0, 0, 0, 1)
    assert isotropic_to_standard(L, t, t) == identity_isometry(L)
    g = isotropic_to_standard(L, (0, 0, 0, -1), t)
    assert g((0, 0, 0, -1)) == t and g.is_isometry()


def test_standardize_rejects_bad_input():
    L = MukaiLattice(U).lattice
    t = (0, 0, 0, 1)
    with pytest.raises(NotPrimitiveError):
        isotropic_to_standard(L, (0, 2, 0, 0), t)
    with pytest.raises(NotIsotropicError):
        isotropic_to_standard(L, (1, 0, 0, 1), t)
    with pytest.raises(OrbitError):
        isotropic_to_standard(Lattice(((0, 2), (2, 0))), (1, 0), (0, 1))
    with pytest.raises(OrbitError):
        isotropic_to_standard(Lattice(((0, 1, 0), (1, 0, 0), (0, 0, 1))), (1, 0, 0), (0, 1, 0))


def test_isotropic_to_standard_u3_random():
    rng = random.Random(20)
    t = (1, 0, 0, 0, 0, 0)
    for _ in range(100):
        v = random_isotropic_u3(rng)
        g = isotropic_to_standard(U3, v, t)
        assert g(v) == t
        assert g.is_isometry()


def test_isotropic_to_standard_mukai_random():
    M = k3_mukai_lattice()
    L = M.lattice
    t = M.coords(M.point_class())
    rng = random.Random(21)
    for _ in range(20):
        v = random_isotropic_mukai(rng, M)
        g = isotropic_to_standard(L, v, t)
        assert g(v) == t and g.is_isometry()


def test_isometry_group_operations():
    L = U3
    g = transvection(L, (1, 0, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0))
    h = transvection(L, (0, 0, 0, 0, 1, 0), (1, 0, 0, 0, 0, 0))
    assert g.is_isometry() and h.is_isometry()
    assert g.compose(g.inverse()) == identity_isometry(L)
    v = (1, 2, 3, 4, 5, 6)
    assert g.compose(h)(v) == g(h(v))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4),
       st.sampled_from([0, 2, 4]))
def test_transvections_are_isometries(m_other, slot):
    # e spans half of one hyperbolic plane; m lives in the other two
    e = tuple(int(i == slot) for i in range(6))
    it = iter(m_other)
    m = tuple(0 if i in (slot, slot + 1) else next(it) for i in range(6))
    g = transvection(U3, e, m)
    assert g.is_isometry()
    assert g(e) == e


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_primitive_matches_content(v):
    if not any(v):
        with pytest.raises(ZeroVectorError):
            is_primitive(standard_lattice(3), tuple(v))
    else:
        assert is_primitive(standard_lattice(3), tuple(v)) == (intlin.content(v) == 1)
