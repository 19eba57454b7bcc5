//! Singular vectors in M(V ⊗ T(r,θ)): the a, b, c, d calculus, the classified families,
//! verification and a bounded-degree search.

pub mod abcd;
pub mod cases;
pub mod commutators;
pub mod search;

pub use abcd::{build_abcd, Abcd, AbcdError, RelationCheck};
pub use cases::{
    proof_comparison, singular_thetas, singular_vector, singular_vector_formal, singular_vector_in, theta_report, verify_singular,
    CaseError, CaseId, Failure, ProofComparison, ThetaReport, ThetaSet, Verification, SINGULAR_OPS,
};
pub use search::{
    contraction_property, decomposition_scan, search_singular, Contraction, SearchHit, SearchResult, SpaceLabel, ThetaValue,
};
