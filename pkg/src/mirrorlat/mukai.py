"""Mukai vectors on K3 surfaces and the lattice-level mirror map.

Coordinates on H^0 + H^2 + H^4 are ordered (alpha, beta_1..beta_m, gamma),
and the pairing is

    (a, b, c) . (a', b', c') = b.b' - a c' - c a'.

Riemann-Roch is used in the form chi(E, F) = -v(E).v(F), so that
dim M(v) = 2 - chi(v, v) = v.v + 2.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import ratlin
from .errors import (DimensionMismatch, InvariantError, MirrorLatError,
                     ZeroVectorError)
from .lattice import (Lattice,
                      isotropic_to_standard, k3_lattice, quotient_basis,
                      induced_gram, quotient_by_isotropic)


class MukaiLattice:
    """H^0 + H^2 + H^4 built around a user-supplied H^2 lattice."""

    def __init__(self, h2):
        self.h2 = h2
        m = h2.rank
        n = m + 2
        G = [[0] * n for _ in range(n)]
        G[0][n - 1] = G[n - 1][0] = -1
        for i in range(m):
            for j in range(m):
                G[i + 1][j + 1] = h2.gram[i][j]
        labels = ("alpha",) + tuple(h2.labels or (f"b{i}" for i in range(m))) + ("gamma",)
        flags = set(h2.flags)
        self.lattice = Lattice(G, labels=labels, flags=flags)

    def __eq__(self, other):
        return isinstance(other, MukaiLattice) and self.h2 == other.h2

    def __hash__(self):
        return hash(self.h2)

    def __repr__(self):
        return f"MukaiLattice(h2 rank {self.h2.rank})"

    @property
    def rank(self):
        return self.lattice.rank

    def coords(self, v):
        if len(v.beta) != self.h2.rank:
            raise DimensionMismatch(f"beta has length {len(v.beta)}, H^2 has rank {self.h2.rank}")
        return (v.alpha,) + tuple(v.beta) + (v.gamma,)

    def vector(self, coords):
        coords = self.lattice.check(coords)
        return MukaiVector(coords[0], coords[1:-1], coords[-1])

    def point_class(self):
        """(0, 0, 1), the class of a skyscraper sheaf."""
        return MukaiVector(0, (0,) * self.h2.rank, 1)

    def pair(self, v, w):
        return self.lattice.pair(self.coords(v), self.coords(w))


def k3_mukai_lattice():
    """The rank-24 Mukai lattice with H^2 = U^3 + E8(-1)^2."""
    return MukaiLattice(k3_lattice())


@dataclass(frozen=True)
class MukaiVector:
    alpha: int
    beta: tuple
    gamma: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", int(self.alpha))
        object.__setattr__(self, "beta", tuple(int(x) for x in self.beta))
        object.__setattr__(self, "gamma", int(self.gamma))

    def is_zero(self):
        return self.alpha == 0 and self.gamma == 0 and not any(self.beta)


@dataclass(frozen=True)
class ChernInput:
    """Rank, first and second Chern class of a sheaf.

    For objects whose class is more naturally given directly (a skyscraper
    O_P has class (0, 0, 1)), pass ``mukai`` instead.
    """

    rank: int = 0
    c1: tuple = ()
    c2: int = 0
    mukai: Optional[MukaiVector] = None


@dataclass(frozen=True)
class PeriodPoint:
    """Omega = re + i*im in L (x) C with rational coordinates."""

    re: tuple
    im: tuple

    def __post_init__(self):
        object.__setattr__(self, "re", tuple(Fraction(x) for x in self.re))
        object.__setattr__(self, "im", tuple(Fraction(x) for x in self.im))
        if len(self.re) != len(self.im):
            raise DimensionMismatch("re and im have different lengths")


def rational_pair(L, u, v):
    return sum((a * b for a, b in zip(u, ratlin.matvec(L.gram, v))), Fraction(0))


def check_period(L, omega):
    """Raise InvariantError unless Omega.Omega = 0 and Omega.conj(Omega) > 0."""
    if len(omega.re) != L.rank:
        raise DimensionMismatch(f"period has length {len(omega.re)}, lattice rank {L.rank}")
    rr = rational_pair(L, omega.re, omega.re)
    ii = rational_pair(L, omega.im, omega.im)
    ri = rational_pair(L, omega.re, omega.im)
    if rr != ii or ri != 0:
        raise InvariantError("period isotropic", f"re.re={rr}, im.im={ii}, re.im={ri}")
    if rr + ii <= 0:
        raise InvariantError("period positive", f"Omega.conj(Omega) = {rr + ii}")


def mukai_vector(x, L):
    """v(E) = (rank, c1, rank + c1^2/2 - c2)."""
    if x.mukai is not None:
        L.coords(x.mukai)
        return x.mukai
    c1 = tuple(x.c1) if x.c1 else (0,) * L.h2.rank
    sq = L.h2.pair(c1, c1)
    if sq % 2:
        raise InvariantError("even H^2", f"c1.c1 = {sq} is odd")
    return MukaiVector(x.rank, c1, x.rank + sq // 2 - x.c2)


def mukai_pairing(L, v, w):
    return L.pair(v, w)


def euler_pairing(L, v, w):
    """chi(E, F) = -v(E).v(F)."""
    return -L.pair(v, w)


def moduli_dimension(L, v):
    """Dimension of the moduli space of simple sheaves with Mukai vector v."""
    if v.is_zero():
        raise ZeroVectorError("zero Mukai vector")
    return 2 - euler_pairing(L, v, v)


def mirror_map_vector(L, v):
    """An isometry of the Mukai lattice taking v to (0, 0, 1)."""
    t = L.coords(L.point_class())
    # pair((0,0,1), (-1,0,0)) = 1 and (-1,0,0) is isotropic
    tp = (-1,) + (0,) * L.h2.rank + (0,)
    return isotropic_to_standard(L.lattice, L.coords(v), t, t_partner=tp)


def mirror_hodge_structure(L, omega, v):
    """Return (v-perp / v, image of Omega) for primitive isotropic v.

    Omega must lie in H^2 (x) C, i.e. have vanishing alpha and gamma parts,
    and be orthogonal to v.
    """
    M = L.lattice
    check_period(M, omega)
    if omega.re[0] or omega.re[-1] or omega.im[0] or omega.im[-1]:
        raise InvariantError("period in H^2", "H^0 and H^4 components must vanish")
    vc = L.coords(v)
    if rational_pair(M, omega.re, vc) or rational_pair(M, omega.im, vc):
        raise MirrorLatError("period is not orthogonal to v; no image of type (2,0) in v-perp/v")
    lifts = quotient_basis(M, vc)
    Q = quotient_by_isotropic(M, vc)
    # Omega = sum x_i lift_i + s v
    cols = [list(b) for b in lifts] + [list(vc)]
    A = ratlin.transpose(ratlin.qmat(cols)) if cols else []
    out = []
    for part in (omega.re, omega.im):
        x = ratlin.solve(A, list(part))
        if x is None:
            raise MirrorLatError("period does not lie in v-perp")
        out.append(tuple(x[:-1]))
    image = PeriodPoint(out[0], out[1])
    if induced_gram(M, lifts) != Q.gram:
        raise MirrorLatError("quotient Gram mismatch")
    check_period(Q, image)
    return Q, image
