"""Exact computer algebra for Z2-graded Lie and 3-Lie-Rinehart structures."""

from .core import (
    CheckReport,
    Element,
    GradedSpace,
    MultilinearMap,
    Permutation,
    Scalar,
    check_parity_consistency,
    koszul_sign,
    super_alternating_defect,
)
from .structures import (
    EndoMap,
    LieRinehartStructure,
    RepresentationAction,
    SuperCommutativeAlgebra,
    ThreeLieRinehartStructure,
    adjoint_rep,
    check_3lie_rinehart,
    check_3lie_super,
    check_derivation,
    check_filippov_equivalents,
    check_homomorphism,
    check_ideal,
    check_lie_rinehart,
    check_lie_super,
    check_module_3LR,
    check_module_LR,
    check_rep_3lie,
    check_rep_lie,
    check_structural_identities,
    check_subalgebra,
    kernel_of_anchor,
)
from .constructions import (
    ConstructionRefused,
    SuperTrace,
    check_supertrace,
    check_trace_module_condition,
    induce_3LR,
    induce_3bracket,
    induce_rep,
    reduce_binary,
    semidirect_sum,
    supertrace_space,
    tensor_lift,
    trivial_extension,
)

__version__ = "0.1.0"
