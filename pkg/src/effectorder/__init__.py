"""Euclidean Jordan algebras and the order isomorphisms of their effect
algebras [0, e], with closed-form construction, inversion, composition,
parameter recovery, and a seeded numerical verification harness."""

from .algebra import (
    AlgebraDescriptor,
    DomainError,
    Element,
    Factor,
    HermFactor,
    Ring,
    ShapeMismatchError,
    SingularElementError,
    SpinFactor,
    algebra,
    canonical_trace,
    element_from_blocks,
    element_in_factor,
    jordan_product,
    quad_rep,
    single_factor,
    sup_norm,
    triple_product,
    unit,
    zero,
)
from .spectral import (
    SpectralDecomposition,
    apply_function,
    invert_element,
    max_eigenvalue,
    min_eigenvalue,
    positive_min_eigenvalue,
    pseudo_inv_sqrt,
    range_approximants,
    range_projection,
    spectral_decompose,
    sqrt_element,
)
from .order import (
    OrderClass,
    central_structure,
    classify,
    dominates_atom,
    has_totally_ordered_interval,
    in_cone,
    in_effect_interval,
    leq,
    proj_join,
    proj_meet,
    split_by_central,
    unsplit_by_central,
)
from .isomorphisms import (
    CompositeOrderIso,
    FactorJordanIso,
    FactorOrderIso,
    PhiScalarIso,
    PwlScalarIso,
    RecoveryError,
    ScalarOrderIso,
    compose_factor_isos,
    cone_interval_map,
    coordinate_squeeze_iso,
    identity_jordan,
    interior_iso_apply,
    interval_top_map,
    mobius_apply,
    mobius_compose,
    mobius_invert_param,
    mobius_scalar,
    params_from_cone_map,
    recover_factor_iso,
    transitivity_witness,
)
from .sampling import (
    SAMPLE_CLASSES,
    random_composite_iso,
    random_element,
    random_factor_iso,
    random_jordan_iso,
    sample_atom,
    sample_element,
    sample_ordered_pair,
)
from .harness import (
    CheckResult,
    SuiteReport,
    counterexample_report,
    render_report,
    run_identity_suite,
    run_interval_suite,
    run_order_iso_suite,
    scalar_oracle_compare,
)
from .serialization import SchemaError, dump_document, load_document

__version__ = "0.1.0"
