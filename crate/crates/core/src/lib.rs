//! Exact nilpotency of the semigroup of rationally trivial self-maps of a finite H-space.
//!
//! The rational cohomology of a finite H-space is an exterior algebra on odd-degree
//! generators, and a self-map of its rationalization that kills homotopy is the same
//! thing as an algebra endomorphism sending each generator to a decomposable element.
//! This crate computes the nilpotency `t(X₀)` of that semigroup exactly, emits
//! replayable certificates, builds the explicit smash-product chains for the classical
//! groups, and checks nilpotency of finite composition tables.
//!
//! Every value computed from degrees alone is `t(X₀)`, which bounds `t(X)` from below.

pub mod engine;
pub mod error;
pub mod exterior;
pub mod lie;
pub mod selfmap;
pub mod semigroup;

pub use engine::{
    brute_force_nilpotency, closed_form_depth, exact_nilpotency, exact_nilpotency_with,
    max_refinement_depth, max_refinement_depth_with, randomized_witness, BruteForceOutcome,
    ChainCertificate, DeepestTree, FamilyShape, NilpotencyReport, RefinementTree, SearchConfig,
};
pub use error::{AlgebraError, EngineError, LieError, SemigroupError};
pub use exterior::{
    add_elements, mul_elements, mul_monomials, scale_element, AlgebraElement, Coeff,
    DegreeSequence, Monomial, Sign,
};
pub use lie::{
    build_smash_chain, degree_sequence, threshold, verify_chain, Family, FamilyTag, SmashChain,
};
pub use selfmap::{
    apply_endo, compose_endos, enumerate_decomposable_sets, make_basis_map, sample_generic_endo,
    zmodule_dimension, BasisMapId, CohomEndo,
};
pub use semigroup::{
    load_known_cases, presentation_nilpotency, table_nilpotency, GroupStructure, KnownCase,
    Nilpotency, SemigroupTable, ZeroCompositionPresentation,
};
