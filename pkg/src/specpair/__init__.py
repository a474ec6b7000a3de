"""Lattice spectral pairs and the self-similar measures they induce.

The package builds the datum behind a lattice spectral pair (three nested
lattices, a digit section, matching frequency digits), validates it
exactly, constructs the induced self-similar measure, evaluates its
transform by truncated products and by quadrature, enumerates the
orthogonal frequency set with its completeness diagnostics, and verifies
the isometry relations the datum is supposed to satisfy.
"""

from .boxes import Box, BoxUnion
from .errors import (
    BadSection,
    BudgetExceeded,
    CollisionDetected,
    DepthTooLarge,
    IdenticalPoints,
    MemberOfSpectrum,
    NotASublattice,
    NotEmbeddable,
    NotExpansive,
    ParseError,
    SpectralPairError,
    UnknownDigit,
    ValidationFailed,
)
from .lattice import (
    CheckResult,
    Lattice,
    LatticeInclusion,
    SimpleFactor,
    ValidationReport,
    coset_representatives,
    dual_lattice,
    expansion_map,
    frequency_map,
    inclusion_matrix,
    same_lattice,
    validate_simple_factor,
)
from .measure import (
    AffineIFS,
    DiscreteMeasure,
    NoWitness,
    build_ifs,
    integrate_exponential,
    refine_measure,
    separation_witness,
)
from .operators import (
    ConsistencyReport,
    ExponentialVector,
    RelationReport,
    Word,
    apply_adjoint,
    apply_generator,
    apply_word,
    apply_word_adjoint,
    as_word,
    classify_measure,
    relation_residuals,
    state_eval,
    word_frequency,
)
from .pair import (
    TilingReport,
    TruncatedSpectrum,
    indicator_transform,
    orthogonality_matrix,
    reduce_mod_lattice,
    tiling_check,
    translation_membership,
    truncate_spectrum,
)
from .specfile import (
    LoadedSpec,
    builtin_names,
    document_from,
    dumps_spec,
    parse_document,
    parse_spec,
)
from .spectrum import (
    AllOrthogonal,
    CompletenessRow,
    SpectrumEnumeration,
    Witness,
    completeness_partial_sum,
    completeness_table,
    enumerate_spectrum,
    maximality_probe,
)
from .tables import emit_table, render_table
from .transform import (
    BothResult,
    TransformSettings,
    functional_equation_residual,
    mask,
    mu_hat,
    mu_hat_value,
)

__version__ = "0.1.0"

__all__ = [
    "AffineIFS", "AllOrthogonal", "BadSection", "BothResult", "Box",
    "BoxUnion", "BudgetExceeded", "CheckResult", "CollisionDetected",
    "CompletenessRow", "ConsistencyReport", "DepthTooLarge",
    "DiscreteMeasure", "ExponentialVector", "IdenticalPoints", "Lattice",
    "LatticeInclusion", "LoadedSpec", "MemberOfSpectrum", "NoWitness",
    "NotASublattice", "NotEmbeddable", "NotExpansive", "ParseError",
    "RelationReport", "SimpleFactor", "SpectralPairError",
    "SpectrumEnumeration", "TilingReport", "TransformSettings",
    "TruncatedSpectrum", "UnknownDigit", "ValidationFailed",
    "ValidationReport", "Witness", "Word", "apply_adjoint",
    "apply_generator", "apply_word", "apply_word_adjoint", "as_word",
    "build_ifs", "builtin_names", "classify_measure",
    "completeness_partial_sum", "completeness_table",
    "coset_representatives", "document_from", "dual_lattice", "dumps_spec",
    "emit_table", "enumerate_spectrum", "expansion_map", "frequency_map",
    "functional_equation_residual", "inclusion_matrix",
    "indicator_transform", "integrate_exponential", "mask",
    "maximality_probe", "mu_hat", "mu_hat_value", "orthogonality_matrix",
    "parse_document", "parse_spec", "reduce_mod_lattice", "refine_measure",
    "relation_residuals", "render_table", "same_lattice",
    "separation_witness", "state_eval", "tiling_check",
    "translation_membership", "truncate_spectrum", "validate_simple_factor",
    "word_frequency",
]
