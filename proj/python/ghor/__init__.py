"""Ghor algebras on polygon surfaces: matchings, labels, cycle topology and centres."""

from ._ghor import (
    CentralGeometry,
    CompositionError,
    ConstructionGap,
    CycleTopology,
    DimerQuiver,
    EmbeddingError,
    Error,
    MalformedWord,
    ParseError,
    PreconditionError,
    TheoremViolation,
    build_center_deficient,
    build_conifold_generalization,
    build_conifold_torus,
    build_polynomial,
    classify,
    eta_bar,
    krull_rank,
    run_cli,
    suite,
    tau_bar,
    validate,
    verify_suite,
    words_equal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
