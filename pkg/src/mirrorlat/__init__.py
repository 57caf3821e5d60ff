"""Exact lattice-level mirror symmetry: Mukai lattices, A-model connections, T-duals."""

from .avhs import (ConnectionPresentation, GradedSpace, GWData, HodgeDiamond,
                   amodel_presentation, associativity_check, calabi_yau_diamond,
                   connection_operator, flatness_check, gamma_from_phi, griffiths_check,
                   quantum_product, residue, topological_mirror_test, validate_phi,
                   vhs_isomorphism_check)
from .errors import InputError, InvariantError, MirrorLatError
from .lattice import (Isometry, Lattice, Sublattice, direct_sum, e8, find_dual_partner,
                      hyperbolic_plane, isotropic_to_standard, k3_lattice, orthogonal_complement,
                      pair, quotient_by_isotropic, saturate, standard_lattice)
from .intlin import hermite_normal_form, smith_normal_form
from .mukai import (ChernInput, MukaiLattice, MukaiVector, PeriodPoint, euler_pairing,
                    k3_mukai_lattice, mirror_hodge_structure, mirror_map_vector,
                    moduli_dimension, mukai_pairing, mukai_vector)
from .series import TruncatedSeries
from .tduality import (DualClass, PureCycle, annihilator, double_dual, leray_filtration_check,
                       leray_level, t_dual_cycle)
from .weights import WeightFiltration, weight_filtration

__all__ = [
    "ChernInput",
    "ConnectionPresentation",
    "DualClass",
    "GWData",
    "GradedSpace",
    "HodgeDiamond",
    "InputError",
    "InvariantError",
    "Isometry",
    "Lattice",
    "MirrorLatError",
    "MukaiLattice",
    "MukaiVector",
    "PeriodPoint",
    "PureCycle",
    "Sublattice",
    "TruncatedSeries",
    "WeightFiltration",
    "amodel_presentation",
    "annihilator",
    "associativity_check",
    "calabi_yau_diamond",
    "connection_operator",
    "direct_sum",
    "double_dual",
    "e8",
    "euler_pairing",
    "find_dual_partner",
    "flatness_check",
    "gamma_from_phi",
    "griffiths_check",
    "hermite_normal_form",
    "hyperbolic_plane",
    "isotropic_to_standard",
    "k3_lattice",
    "k3_mukai_lattice",
    "leray_filtration_check",
    "leray_level",
    "mirror_hodge_structure",
    "mirror_map_vector",
    "moduli_dimension",
    "mukai_pairing",
    "mukai_vector",
    "orthogonal_complement",
    "pair",
    "quantum_product",
    "quotient_by_isotropic",
    "residue",
    "saturate",
    "smith_normal_form",
    "standard_lattice",
    "t_dual_cycle",
    "topological_mirror_test",
    "validate_phi",
    "vhs_isomorphism_check",
    "weight_filtration",
]
