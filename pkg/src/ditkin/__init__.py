"""Exact-arithmetic toolkit for weighted difference algebras on N ∪ {∞}.

The algebra attached to a positive weight sequence consists of the
continuous functions whose weighted sum of consecutive differences
converges, normed by the uniform norm plus that sum.  This package
represents weight sequences and elements symbolically, computes norms and
truncation residuals exactly (or as certified rational intervals), selects
approximate-identity subsequences, and classifies the regularity properties
the weights decide.
"""

from .algebra import (
    DEFAULT_HORIZON,
    INFINITY,
    ClosedSet,
    DyadicDecay,
    Element,
    EventuallyConstant,
    IdealSpec,
    NormResult,
    ONE,
    RuleBased,
    ZERO,
    element_from_obj,
    element_to_obj,
)
from .approx_identity import (
    AiSelection,
    DEFAULT_SELECTION_COUNT,
    DiagnosticRow,
    diagnostics_to_csv,
    ditkin_approximation,
    prefix_indicator,
    residual_diagnostics,
    residual_norm,
    residual_oracle,
    select_ai_subsequence,
)
from .classifier import (
    PropertyReport,
    RelativeUnitWitness,
    dyadic_counterexample,
    property_report,
    relative_unit_witness,
    unbounded_nondivergent_family,
)
from .errors import (
    DitkinError,
    DivergentVariationError,
    HorizonExhausted,
    InvalidExcludedSet,
    MissingTailBound,
    NotDivergentError,
    NotInMInfinityError,
    SchemaError,
    UndecidableMembership,
    UnsupportedOperandKind,
)
from .weights import (
    Constant,
    Interleave,
    Linear,
    PrefixOverride,
    Rational,
    TailInf,
    WeightClassification,
    WeightFamily,
    format_rational,
    parse_rational,
    weight_family_from_obj,
)

__version__ = "0.1.0"

__all__ = [
    "AiSelection",
    "ClosedSet",
    "Constant",
    "DEFAULT_HORIZON",
    "DEFAULT_SELECTION_COUNT",
    "DiagnosticRow",
    "DitkinError",
    "DivergentVariationError",
    "DyadicDecay",
    "Element",
    "EventuallyConstant",
    "HorizonExhausted",
    "IdealSpec",
    "INFINITY",
    "Interleave",
    "InvalidExcludedSet",
    "Linear",
    "MissingTailBound",
    "NormResult",
    "NotDivergentError",
    "NotInMInfinityError",
    "ONE",
    "PrefixOverride",
    "PropertyReport",
    "Rational",
    "RelativeUnitWitness",
    "RuleBased",
    "SchemaError",
    "TailInf",
    "UndecidableMembership",
    "UnsupportedOperandKind",
    "WeightClassification",
    "WeightFamily",
    "ZERO",
    "diagnostics_to_csv",
    "ditkin_approximation",
    "dyadic_counterexample",
    "element_from_obj",
    "element_to_obj",
    "format_rational",
    "parse_rational",
    "prefix_indicator",
    "property_report",
    "relative_unit_witness",
    "residual_diagnostics",
    "residual_norm",
    "residual_oracle",
    "select_ai_subsequence",
    "unbounded_nondivergent_family",
    "weight_family_from_obj",
]
