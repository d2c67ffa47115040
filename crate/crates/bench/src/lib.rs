//! Fixtures shared by the criterion benches.

use normaloid_core::{generate, ComplexMatrix, EnsembleKind, EnsembleSpec, SequenceSpec};

pub fn matrix(kind: EnsembleKind, dim: usize) -> ComplexMatrix {
    generate(&EnsembleSpec::new(kind, dim, 0x5eed)).expect("valid fixture spec")
}

pub fn sequence(len: usize) -> SequenceSpec {
    normaloid_core::generate_sequence(len, 0x5eed, 10.0).expect("valid fixture spec")
}
