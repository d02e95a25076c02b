"""Relative K2 of square-zero ideals in finite commutative algebras.

Two independent computations of K2(F_p[G], (G~)) for a finite abelian
p-group G — a Kahler-differential tensor model and a brute-force symbol
presentation — plus the integral character lattices that compare the
modular answer with Z[G] at the elementary abelian scale.
"""

from .algebras import (
    AlgebraIdeal,
    FiniteAlgebra,
    QuotientAlgebra,
    RealizedModule,
    TensorProduct,
    bilinear_map_trivial,
    ideal_closure,
    module_over_quotient,
    quotient_algebra,
    tensor_over_algebra,
)
from .dennis_stein import (
    RhoMap,
    SquareZeroContext,
    SymbolExpr,
    SymbolPresentation,
    TablePresentation,
    build_presentation,
    check_square_zero,
    is_unit,
    parse_algebra_element,
    psi_triviality_check,
    scholium_expand,
)
from .differentials import (
    DiffForm,
    PresentedAlgebra,
    conormal_check,
    d,
    omega,
    omega_group_ring,
    omega_of_quotient,
)
from .errors import (
    HypothesisError,
    LatticeRankError,
    ScopeError,
    SizeBudgetError,
    SpecMismatchError,
)
from .groupring import (
    GroupSpec,
    RingElement,
    augmentation,
    gtilde,
    gtilde_factorization_check,
    parse_element,
    x_element,
)
from .k2 import (
    K2Report,
    cartesian_square,
    default_factor_blocks,
    excision_check,
    k2_relative_structure,
    lemma_basis_texts,
    rho_welldefined_check,
    tensor_route_structure,
    theorem1_check,
)
from .lattices import (
    CharacterLattice,
    FiniteQuotientRing,
    build_lattices,
    quotient_ring,
    relation_checks,
    relation_details,
)
from .linalg import (
    AbelianGroupStructure,
    CokernelStructure,
    cokernel_structure,
    hnf,
    hnf_reduce,
    lattice_contains,
    lattice_intersect,
    rank_mod,
    snf,
)
from .suites import SUITES, run_suites, sweep_specs

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupStructure",
    "AlgebraIdeal",
    "CharacterLattice",
    "CokernelStructure",
    "DiffForm",
    "FiniteAlgebra",
    "FiniteQuotientRing",
    "GroupSpec",
    "HypothesisError",
    "K2Report",
    "LatticeRankError",
    "PresentedAlgebra",
    "QuotientAlgebra",
    "RealizedModule",
    "RhoMap",
    "RingElement",
    "SUITES",
    "ScopeError",
    "SizeBudgetError",
    "SpecMismatchError",
    "SquareZeroContext",
    "SymbolExpr",
    "SymbolPresentation",
    "TablePresentation",
    "TensorProduct",
    "augmentation",
    "bilinear_map_trivial",
    "build_lattices",
    "build_presentation",
    "cartesian_square",
    "check_square_zero",
    "cokernel_structure",
    "conormal_check",
    "d",
    "default_factor_blocks",
    "excision_check",
    "gtilde",
    "gtilde_factorization_check",
    "hnf",
    "hnf_reduce",
    "ideal_closure",
    "is_unit",
    "k2_relative_structure",
    "lattice_contains",
    "lattice_intersect",
    "lemma_basis_texts",
    "module_over_quotient",
    "omega",
    "omega_group_ring",
    "omega_of_quotient",
    "parse_algebra_element",
    "parse_element",
    "psi_triviality_check",
    "quotient_algebra",
    "quotient_ring",
    "rank_mod",
    "relation_checks",
    "relation_details",
    "rho_welldefined_check",
    "run_suites",
    "scholium_expand",
    "snf",
    "sweep_specs",
    "tensor_over_algebra",
    "tensor_route_structure",
    "theorem1_check",
    "x_element",
]
