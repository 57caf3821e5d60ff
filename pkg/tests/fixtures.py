"""Hand-built data shared by several test modules."""

from fractions import Fraction

from mirrorlat.avhs import ConnectionPresentation, GradedSpace, GWData
from mirrorlat.series import TruncatedSeries, smat_const

from gen import monomial_ring


def rank4_space(k=5):
    """{1, e, e^2, e^3} with e.e^2 = k: a threefold with h^{1,1} = 1."""
    return GradedSpace(3, (1, 1, 1, 1), {(0, 0, 3): k, (0, 1, 2): k, (1, 1, 1): k},
                       labels=("1", "e", "e2", "e3"))


def rank4_gw(phi_eee=5, k=5):
    return GWData(rank4_space(k), {(1,): {(1, 1, 1): phi_eee}})


def p2p2_space():
    """H*(P^2 x P^2): basis 1 | x, y | x^2, xy, y^2 | x^2y, xy^2 | x^2y^2."""
    return monomial_ring((2, 2), 1)


X, Y, XX, XY, YY = 1, 2, 3, 4, 5


def nonassociative_gw():
    """One class eta = (1, 0) with Phi(x, x, xy) = 3, Phi(x, x, y^2) = -2.

    It satisfies every axiom checked by validate_phi, but the deformed
    product is not associative and the connection is not flat.
    """
    entries = {}
    for key, val in (((X, X, XY), 3), ((X, X, YY), -2)):
        a, b, c = key
        for perm in {(a, b, c), (a, c, b), (c, a, b)}:
            entries[perm] = val
    return GWData(p2p2_space(), {(1, 0): entries})


def zero_gw(space):
    return GWData(space, {})


def constant_presentation(mats, filtration, cutoff=2):
    """Presentation whose operators are the given constant matrices."""
    r = len(mats)
    ops = [smat_const(M, r, cutoff) for M in mats]
    return ConnectionPresentation(len(mats[0]), r, cutoff, ops, filtration)


def unit_vectors(n, idx):
    return tuple(tuple(Fraction(int(i == k)) for k in range(n)) for i in idx)


def series(r, D, coeffs):
    return TruncatedSeries(r, D, coeffs)
