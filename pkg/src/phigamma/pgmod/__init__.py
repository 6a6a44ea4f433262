"""(φ,Γ)-modules, their lattices, reduction and classification."""

from .iso import Recovery, phi_hom_space, recover_weil_params, reduced, test_isomorphic
from .lattice import (
    Lattice,
    compute_dnat,
    hermite_form,
    lattice_psi_image,
    reduce_to_lattice,
    standard_lattice,
)
from .module import (
    PhiGammaModule,
    ValidationReport,
    det_module,
    direct_sum,
    disguise,
    gamma_generators,
    induced_from_params,
    phi_module,
    psi_module,
    random_basis_change,
    rank1_from_character,
    validate_module,
)
from .psitophi import PsiGammaModule, psi_data, psitophi_reconstruct
from .reduction import (
    ReductionCertificate,
    classify_rank1,
    cyclic_vector,
    min_twisted_poly,
    module_slope,
    regularize_frobenius,
    slope_zero_reduction,
)

__all__ = [
    "Lattice",
    "PhiGammaModule",
    "PsiGammaModule",
    "Recovery",
    "ReductionCertificate",
    "ValidationReport",
    "classify_rank1",
    "compute_dnat",
    "cyclic_vector",
    "det_module",
    "direct_sum",
    "disguise",
    "gamma_generators",
    "hermite_form",
    "induced_from_params",
    "lattice_psi_image",
    "min_twisted_poly",
    "module_slope",
    "phi_hom_space",
    "phi_module",
    "psi_data",
    "psi_module",
    "psitophi_reconstruct",
    "random_basis_change",
    "rank1_from_character",
    "recover_weil_params",
    "reduce_to_lattice",
    "reduced",
    "regularize_frobenius",
    "slope_zero_reduction",
    "standard_lattice",
    "test_isomorphic",
    "validate_module",
]
