"""Exact intersection calculus, characteristic classes, K-theory shadows,
and Chow motives on finite products of projective spaces."""

from .chern import (
    BundleClass,
    PowerSumVector,
    chern_character,
    exp_nilpotent,
    line_bundle,
    log_unit,
    power_sums,
    series_inverse,
    sqrt_todd,
    tangent_class,
    todd_class,
    todd_series_coefficients,
    variety_todd,
)
from .corr import (
    FactorSelection,
    GradedCorrespondence,
    cartesian,
    compose_cycles,
    compose_graded,
    compose_homogeneous,
    diagonal_class,
    diagonal_pushforward,
    permute_factors,
)
from .errors import (
    ChowError,
    DomainMismatchError,
    InvalidInputError,
    PreconditionError,
    SingularSeriesError,
    SupportConditionError,
)
from .kshadow import (
    KClass,
    KKernel,
    chow_image,
    euler_characteristic,
    identity_kernel,
    k_compose,
    support_codim_floor,
)
from .motives import (
    FormalSum,
    FormalSumMorphism,
    Motive,
    MotiveMorphism,
    OrbitMorphism,
    OrlovReport,
    compatibility_check,
    compose_motive,
    degree_zero_rigidify,
    dual,
    lefschetz_motive,
    motive_of,
    nc_hom,
    orbit_compose,
    orlov_pipeline,
    split_idempotent,
    tate_motive,
    tate_twist,
    tensor,
    tensor_morphism,
    unit_motive,
    zero_motive,
)
from .ring import Cycle, Variety, make_variety

__all__ = [
    "BundleClass",
    "ChowError",
    "Cycle",
    "DomainMismatchError",
    "FactorSelection",
    "FormalSum",
    "FormalSumMorphism",
    "GradedCorrespondence",
    "InvalidInputError",
    "KClass",
    "KKernel",
    "Motive",
    "MotiveMorphism",
    "OrbitMorphism",
    "OrlovReport",
    "PowerSumVector",
    "PreconditionError",
    "SingularSeriesError",
    "SupportConditionError",
    "Variety",
    "cartesian",
    "chern_character",
    "chow_image",
    "compatibility_check",
    "compose_cycles",
    "compose_graded",
    "compose_homogeneous",
    "compose_motive",
    "degree_zero_rigidify",
    "diagonal_class",
    "diagonal_pushforward",
    "dual",
    "euler_characteristic",
    "exp_nilpotent",
    "identity_kernel",
    "k_compose",
    "lefschetz_motive",
    "line_bundle",
    "log_unit",
    "make_variety",
    "motive_of",
    "nc_hom",
    "orbit_compose",
    "orlov_pipeline",
    "permute_factors",
    "power_sums",
    "series_inverse",
    "split_idempotent",
    "sqrt_todd",
    "support_codim_floor",
    "tangent_class",
    "tate_motive",
    "tate_twist",
    "tensor",
    "tensor_morphism",
    "todd_class",
    "todd_series_coefficients",
    "unit_motive",
    "variety_todd",
    "zero_motive",
]
