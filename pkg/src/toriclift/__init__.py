"""toriclift: exact combinatorial decision procedures for toric varieties
presented as fans — quotient presentations, lifting of toric morphisms to
those presentations, and toric isomorphism testing.

All arithmetic is exact integer arithmetic; no floating point anywhere.
"""

__version__ = "0.1.0"

from .divisors import (
    CartierData,
    ClassGroupData,
    DivisorSubgroup,
    EnoughDivisorsReport,
    SubgroupValidationError,
    cartier_data,
    class_group,
    cox_subgroup,
    divisor_subgroup,
    enough_divisors,
    kajiwara_subgroup,
    principal_basis,
    principal_divisor,
)
from .fan import (
    DegenerateFanError,
    Fan,
    FanValidationError,
    Location,
    SmoothnessProfile,
    TorusFactorSplit,
    split_torus_factor,
    validate_fan,
)
from .fanfile import (
    FanDocument,
    FanFileError,
    parse_fan_file,
    read_fan_document,
    validate_document,
)
from .isomorphism import (
    FanIso,
    IsoReport,
    fan_isomorphic,
    toric_isomorphism,
    verify_fan_iso,
)
from .lattice import (
    FgAbGroup,
    IntMatrix,
    ResourceLimitError,
    hermite_row_basis,
    hilbert_basis,
    smith_normal_form,
)
from .lifting import (
    LiftingReport,
    MorphismValidationError,
    ToricMorphism,
    classify_liftings,
    pullback_cartier,
    solve_geometric_pullback,
    strict_transform,
    validate_toric_morphism,
)
from .presentation import (
    Presentation,
    build_presentation,
    grading_factorization,
    presentation_from_subgroup,
)

__all__ = [
    "__version__",
    "CartierData",
    "ClassGroupData",
    "DegenerateFanError",
    "DivisorSubgroup",
    "EnoughDivisorsReport",
    "Fan",
    "FanDocument",
    "FanFileError",
    "FanIso",
    "FanValidationError",
    "FgAbGroup",
    "IntMatrix",
    "IsoReport",
    "LiftingReport",
    "Location",
    "MorphismValidationError",
    "Presentation",
    "ResourceLimitError",
    "SmoothnessProfile",
    "SubgroupValidationError",
    "ToricMorphism",
    "TorusFactorSplit",
    "build_presentation",
    "cartier_data",
    "class_group",
    "classify_liftings",
    "cox_subgroup",
    "divisor_subgroup",
    "enough_divisors",
    "fan_isomorphic",
    "grading_factorization",
    "hermite_row_basis",
    "hilbert_basis",
    "kajiwara_subgroup",
    "parse_fan_file",
    "presentation_from_subgroup",
    "principal_basis",
    "principal_divisor",
    "pullback_cartier",
    "read_fan_document",
    "smith_normal_form",
    "solve_geometric_pullback",
    "split_torus_factor",
    "strict_transform",
    "toric_isomorphism",
    "validate_document",
    "validate_fan",
    "validate_toric_morphism",
    "verify_fan_iso",
]
