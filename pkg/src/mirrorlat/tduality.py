"""Pure cycles on a T^n-fibration and their T-duals.

A pure cycle is recorded by the class of its fiber sub-torus (a saturated
sublattice S of Z^n = H_1(T^n)), the dimension k of its image in the base,
and the multiplicity m when the fiber class is m times a primitive class.
Its T-dual sweeps out the annihilator of S in the dual torus and defines a
class of degree 2k.

Orientation signs of the dual class are fixed by the standard basis of
(Z^n)* and are not tracked further.
"""

from dataclasses import dataclass

from . import intlin
from .errors import DimensionMismatch, InvariantError, NotSaturatedError
from .lattice import Sublattice, standard_lattice


def fiber_lattice(n, basis):
    """Sublattice of Z^n with the given basis vectors."""
    return Sublattice(standard_lattice(n), tuple(tuple(b) for b in basis))


def annihilator(S):
    """{phi in (Z^n)* : phi(s) = 0 for s in S}, as a sublattice of Z^n."""
    if not S.is_saturated():
        raise NotSaturatedError("annihilator needs a saturated sublattice; split off the multiplicity first")
    n = S.ambient.rank
    rows = [list(b) for b in S.basis]
    return Sublattice(standard_lattice(n), tuple(tuple(r) for r in intlin.integer_kernel(rows, n)))


def double_dual(S):
    return annihilator(annihilator(S))


def primitive_part(n, basis):
    """Split a fiber class into (saturated sublattice, multiplicity).

    The multiplicity is the index of the span in its saturation.
    """
    S = fiber_lattice(n, basis)
    m = S.index()
    if not S.basis:
        return S, 1
    sat = intlin.saturate_rows([list(b) for b in S.basis], n)
    return fiber_lattice(n, sat), m


@dataclass(frozen=True)
class PureCycle:
    n: int
    fiber: Sublattice
    base_dim: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.fiber.ambient.rank != self.n:
            raise DimensionMismatch(f"fiber lattice lives in Z^{self.fiber.ambient.rank}, not Z^{self.n}")
        if self.fiber.rank + self.base_dim != self.n:
            raise InvariantError("rank(S) + k = n",
                                 f"rank {self.fiber.rank} + k {self.base_dim} != {self.n}")
        if self.multiplicity < 1:
            raise InvariantError("multiplicity positive")
        if not self.fiber.is_saturated():
            raise InvariantError("fiber lattice saturated", "carry multiples in the multiplicity field")

    @classmethod
    def build(cls, n, fiber_basis, k, multiplicity=1):
        return cls(n, fiber_lattice(n, fiber_basis), k, multiplicity)


@dataclass(frozen=True)
class DualClass:
    degree: int
    dual: Sublattice
    rank_hint: int

    def __post_init__(self):
        if self.degree != 2 * self.dual.rank:
            raise InvariantError("degree = 2 rank(dual)", f"{self.degree} vs rank {self.dual.rank}")
        if self.rank_hint < 1:
            raise InvariantError("rank hint positive")


def leray_level(W):
    """k = n - rank(S): the dimension of the image of W in the base."""
    return W.n - W.fiber.rank


def t_dual_cycle(W):
    ann = annihilator(W.fiber)
    return DualClass(2 * ann.rank, ann, W.multiplicity)


def leray_filtration_check(cycles, images):
    """Every cycle of Leray level k maps into degrees <= 2k."""
    if len(cycles) != len(images):
        raise DimensionMismatch(f"{len(cycles)} cycles but {len(images)} images")
    return all(img.degree <= 2 * leray_level(W) for W, img in zip(cycles, images))
