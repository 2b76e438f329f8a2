"""Verification workbench for finite lattice ordered effect algebras.

Builds finite D-lattices from partial sum tables, enumerates their
D-filters and D-congruences, verifies the order isomorphism between the
two, and checks that submeasures, compatible pseudometrics and modular
measures generate exactly the congruences the structure theory predicts.
Everything is exhaustive and exact: element indices, bitmask subsets and
rational arithmetic, with brute-force oracles for each derived operation.
"""

from .core import (
    AxiomViolation,
    Classification,
    DLatticeError,
    EffectAlgebra,
    MixedAlgebras,
    NotALattice,
    NotAPartialOrder,
    SizeCap,
    algebra_from_obj,
    algebra_to_obj,
    build_algebra,
    classify,
    load_algebra,
    save_algebra,
    verify_basic_identities,
)
from .catalog import (
    boolean_algebra,
    horizontal_sum,
    mo,
    mv_chain,
    product,
    standard_catalog,
)
from .dfilters import (
    DFilterGenerator,
    NotAGenerator,
    dfilter_closure,
    dfilter_join,
    dfilter_meet,
    enumerate_dfilters,
    filter_hasse_dot,
    filter_le,
    is_dfilter_generator,
    verify_filter_lattice,
)
from .uniformities import (
    AlternativeEntourages,
    Congruence,
    NotACongruence,
    NotEquivalence,
    Relation,
    all_pairs,
    alternative_entourages,
    congruence_from_partition,
    diagonal,
    enumerate_d_congruences,
    induced_congruence,
    is_d_congruence,
    relation_combine,
    verify_isomorphism,
    zero_class,
)
from .submeasures import (
    INF,
    KSubmeasure,
    ModularMeasure,
    NotAPseudometric,
    NotASubmeasure,
    NotMV,
    NotModular,
    Pseudometric,
    canonical_indicator,
    check_pseudometric,
    check_weakest,
    decompose_measure,
    is_k_submeasure,
    k_submeasure,
    kernel_uniformity,
    measure_uniformity,
    modular_measure,
    modular_measure_basis,
    modular_measure_check,
    modular_measure_corpus,
    mv_absorption_from_subadditivity,
    pseudometric,
    spread_pseudometrics,
    submeasure_corpus,
    submeasure_from_pseudometric,
)
from .report import CheckResult, Report

__version__ = "0.1.0"
