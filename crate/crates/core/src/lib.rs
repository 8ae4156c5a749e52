//! Exact computations with finite-dimensional Lie algebras over the rationals:
//! derivation algebras, d-derivations, the semidirect product `H = Der(G) ⋉ 𝒟`
//! and the full graph `C(G) = Der(G) ⋉ G`, with verifiers that compare `H`
//! against `Der(C(G))` and d-completeness against completeness of `C(G)`.

pub mod catalog;
pub mod cli;
pub mod dtheory;
pub mod full_graph;
pub mod lie;
pub mod linalg;

pub use catalog::{catalog, lookup, parse_algebra_file, serialize_algebra, CatalogEntry};
pub use dtheory::{DContext, DDerivation, DDerivationSpace, DTheoryError, SemidirectProduct};
pub use full_graph::{
    build_full_graph, verify, verify_center_lemma, verify_theorem1, verify_theorem2, ActionVariant,
    Checks, FullGraph, Setting, VerificationReport,
};
pub use lie::{Derivation, DerivationAlgebra, LieAlgebra, LieError};
pub use linalg::{Matrix, Scalar, Subspace};
