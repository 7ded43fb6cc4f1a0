//! Exact analysis of tournament matrices.
//!
//! A [`Tournament`] stores one bit row per vertex. On top of it the crate
//! counts directed 3-cycles two independent ways, computes exact determinants
//! by fraction-free elimination, decomposes into strong components in
//! dominance order, canonically labels tournaments of order up to 10,
//! enumerates isomorphism classes up to order 9, and checks the extremal
//! statements about singular and nonsingular tournament matrices class by
//! class.

pub mod cycles;
pub mod enumeration;
pub mod error;
pub mod extremal;
pub mod fixtures;
pub mod linalg;
pub mod structure;
pub mod tournament;

pub use cycles::{c3_direct, c3_from_scores, moon_bound, reversal_delta, shader_threshold, BoundPair, CycleCount};
pub use enumeration::{are_isomorphic, canonical_code, canonical_form, enumerate_iso_classes, CanonicalCode, Catalog, ClassFilter};
pub use error::{Error, Result};
pub use extremal::{max_c3_singular, min_c3_nonsingular, verify, Claim, ExtremalResult, Objective, Status, VerificationReport, Verifier};
pub use linalg::{det_via_scc, determinant, determinant_in, is_singular, subdeterminant_spectrum, subtournament, ExactDet, ExactInt};
pub use structure::{classify_singular_maximizer, scc, MaximizerClass, MaximizerKind, SccDecomposition};
pub use tournament::{ScoreVector, Tournament, UpperTriangleCode, VertexSet, MAX_ORDER};

/// Determinant type used throughout: exact `i128`.
pub type Det = ExactDet<i128>;

/// The singular-threshold type: exact quarter-integers.
pub type Threshold = num_rational::Ratio<u64>;
