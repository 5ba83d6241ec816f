"""Exact Ehrhart theory for matroid base polytopes.

Matroids are built from bases (1-based labels), their base polytopes are
counted exactly, and closed forms for minimal matroids, relaxation
identities and the appendix binomial identities are checked against
brute-force computation.
"""

from .errors import CapacityError, DomainError, InputError, MatroidEhrhartError
from .exactmath import BiPolyInt, UniPoly, binomial, is_real_rooted, shift, stirling_first_unsigned
from .formulas import (
    Check,
    D_binomial,
    D_factored,
    D_truncated_sum,
    Report,
    d_coefficient,
    hstar_minimal,
    hypersimplex_ehrhart,
    tutte,
    volume_minimal,
)
from .matroid import (
    ExchangeAxiomError,
    Matroid,
    circuit_hyperplanes,
    enumerate_connected_matroids,
    flats,
    from_bases,
    graphic_from_multigraph,
    is_connected,
    minimal,
    relax,
    uniform,
)
from .polytope import EhrhartData, count_lattice_points, ehrhart, f_vector, h_representation

__version__ = "0.1.0"

__all__ = [
    "BiPolyInt",
    "CapacityError",
    "Check",
    "D_binomial",
    "D_factored",
    "D_truncated_sum",
    "DomainError",
    "EhrhartData",
    "ExchangeAxiomError",
    "InputError",
    "Matroid",
    "MatroidEhrhartError",
    "Report",
    "UniPoly",
    "binomial",
    "circuit_hyperplanes",
    "count_lattice_points",
    "d_coefficient",
    "ehrhart",
    "enumerate_connected_matroids",
    "f_vector",
    "flats",
    "from_bases",
    "graphic_from_multigraph",
    "h_representation",
    "hstar_minimal",
    "hypersimplex_ehrhart",
    "is_connected",
    "is_real_rooted",
    "minimal",
    "relax",
    "shift",
    "stirling_first_unsigned",
    "tutte",
    "uniform",
    "volume_minimal",
]
