"""Exact bijection between one spin-S particle and a cluster of M spin-sigma sites.

S = (p**M - 1)/2 and sigma = (p - 1)/2.  The package derives the digit
polynomials sigma_i(s), the induced reductions of spin-S bond Hamiltonians
to layered spin-sigma models, and the single-particle form of the periodic
Ising chain partition function.  All algebra is exact over the rationals.
"""

from .bijection import (
    ClusterSpec,
    ProjectionTable,
    RoundtripReport,
    compose_spin,
    decompose_spin,
    floor_projection,
    general_inverse,
    inverse_polynomials,
    lagrange_basis,
    projection_table,
    verify_roundtrip,
)
from .errata import ERRATA, Erratum, compare_printed, errata_report
from .errors import DomainError
from .exact import HalfInt, RationalPolynomial, format_rational, linear_solve, parse_rational
from .hamiltonian import (
    LayerCouplings,
    Reduction,
    SpinCouplings,
    bond_energy_layers,
    bond_energy_spin,
    derive_reduction,
    equivalence_check,
    reduce_couplings_7_2,
    solve_exact_case,
    solve_free_constraints,
    solve_periodic_constraints,
)
from .kernels import BACKEND
from .partition import (
    ChainSpec,
    FMatrix,
    LinearForm,
    SymbolicZ,
    f_matrix,
    f_matrix_general,
    free_energy,
    gap_factors,
    partition_closed_form,
    partition_symbolic,
    single_particle_energy,
    transfer_matrix,
    transfer_matrix_partition,
)

__version__ = "0.1.0"
