//! Numerical ranges, numerical radii and spectral norms of dense complex
//! matrices, normaloid classification, and checkers for the norm identities
//! that characterize normaloid operators.
//!
//! The main entry points:
//! - [`linalg`]: [`ComplexMatrix`], the Hermitian eigensolver and `‖A‖`;
//! - [`numrange`]: support-function sweeps of `W(A)` and `w(A)`;
//! - [`normaloid`]: classification and the additivity / supremum checks;
//! - [`sequences`]: diagonal operators and `sup_{|λ|≤M} sup_n |x_n+λ| = 2M`;
//! - [`ensembles`]: seeded test matrices and sequences;
//! - [`formats`]: JSON and CSV input/output.

pub mod ensembles;
pub mod error;
pub mod formats;
pub mod linalg;
pub mod normaloid;
pub mod numrange;
pub mod sequences;

pub use num_complex::Complex64;

pub use ensembles::{generate, generate_sequence, EnsembleKind, EnsembleSpec};
pub use error::{Error, Result};
pub use linalg::{eig_hermitian, spectral_norm, ComplexMatrix, HermitianEigen, MAX_DIM};
pub use normaloid::{
    additivity_holds, bb_condition, corollary_sup, is_normaloid, lemma_translate, sup_modulus,
    theorem_witness, CorollarySup, FiniteCompactSet, NormaloidReport, OperatorAnalysis,
};
pub use numrange::{
    boundary_sweep, extremal_point, membership, numerical_radius, support_function,
    NumericalRangeProfile, SupportSample,
};
pub use sequences::{
    diagonal_operator, inequality_check, sup_modulus_seq, translated_sup, verify_main_theorem,
    SequenceSpec, TheoremVerdict,
};
