"""Exact computations with quantum subgroups of finite-dimensional Hopf algebras.

Both pictures are supported: a quantum subgroup ``K <= G`` is either a Hopf
ideal of the function algebra ``O(G)`` (``"qg"``) or a Hopf subalgebra of the
group algebra ``kG`` (``"dqg"``).
"""

from .exactalg import Cyclotomic, Subspace, scalar
from .hopfcore import (
    AxiomReport,
    HopfAlgebra,
    HopfAxiomError,
    StructuredMap,
    build_validate,
    dual,
    grouplikes,
    tensor_product,
)
from .lattice import (
    PictureMismatch,
    QuantumSubgroup,
    TheoremViolation,
    check_modular_law,
    is_normal,
    is_normal_in,
    join,
    meet,
    normalizes,
)
from .integrals import expectation, haar, integral
from .isothms import IsoCertificate, PreconditionError, second_iso, third_iso, zassenhaus
from .series import find_composition_series, jordan_holder, schreier_refine, validate_series

__all__ = [
    "AxiomReport",
    "Cyclotomic",
    "HopfAlgebra",
    "HopfAxiomError",
    "IsoCertificate",
    "PictureMismatch",
    "PreconditionError",
    "QuantumSubgroup",
    "StructuredMap",
    "Subspace",
    "TheoremViolation",
    "build_validate",
    "check_modular_law",
    "dual",
    "expectation",
    "find_composition_series",
    "grouplikes",
    "haar",
    "integral",
    "is_normal",
    "is_normal_in",
    "join",
    "jordan_holder",
    "meet",
    "normalizes",
    "schreier_refine",
    "scalar",
    "second_iso",
    "tensor_product",
    "third_iso",
    "validate_series",
    "zassenhaus",
]
