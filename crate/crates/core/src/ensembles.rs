//! Seeded matrix and sequence generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Uniform doubles are `(next_u64 >> 11) · 2⁻⁵³`.
//! A standard complex Gaussian uses one Box–Muller pair:
//! `u1, u2` uniform, `ρ = sqrt(−2 ln(1 − u1))`,
//! `z = (ρ cos 2πu2 + i ρ sin 2πu2) / √2`. Matrices are filled row-major.
//! Uniform disk points use `r = scale·sqrt(u1)`, `φ = 2πu2`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, MAX_DIM};
use crate::sequences::SequenceSpec;

/// Relative size of the Ginibre perturbation in `near_normaloid` draws.
pub const NEAR_NORMALOID_PERTURBATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    Ginibre,
    Normal,
    Hermitian,
    NilpotentJordan,
    Diagonal,
    Unitary,
    NearNormaloid,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 7] = [
        EnsembleKind::Ginibre,
        EnsembleKind::Normal,
        EnsembleKind::Hermitian,
        EnsembleKind::NilpotentJordan,
        EnsembleKind::Diagonal,
        EnsembleKind::Unitary,
        EnsembleKind::NearNormaloid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Ginibre => "ginibre",
            EnsembleKind::Normal => "normal",
            EnsembleKind::Hermitian => "hermitian",
            EnsembleKind::NilpotentJordan => "nilpotent_jordan",
            EnsembleKind::Diagonal => "diagonal",
            EnsembleKind::Unitary => "unitary",
            EnsembleKind::NearNormaloid => "near_normaloid",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown ensemble kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub seed: u64,
    pub scale: f64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, dim: usize, seed: u64) -> Self {
        Self {
            kind,
            dim,
            seed,
            scale: 1.0,
        }
    }

    pub fn with_scale(self, scale: f64) -> Self {
        Self { scale, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        validate(self.dim, self.scale)
    }
}

fn validate(dim: usize, scale: f64) -> Result<()> {
    if !(1..=MAX_DIM).contains(&dim) {
        return Err(Error::InvalidSpec(format!("dim {dim} outside [1, {MAX_DIM}]")));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidSpec(format!("scale {scale} must be positive and finite")));
    }
    Ok(())
}

struct Draws(ChaCha8Rng);

impl Draws {
    fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    fn uniform(&mut self) -> f64 {
        (self.0.gen::<u64>() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn complex_gaussian(&mut self) -> Complex64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let rho = (-2.0 * (1.0 - u1).ln()).sqrt();
        Complex64::from_polar(rho, TAU * u2) * FRAC_1_SQRT_2
    }

    fn disk(&mut self, radius: f64) -> Complex64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        Complex64::from_polar(radius * u1.sqrt(), TAU * u2)
    }

    fn ginibre(&mut self, dim: usize, scale: f64) -> ComplexMatrix {
        let entries = (0..dim * dim).map(|_| self.complex_gaussian() * scale).collect();
        ComplexMatrix::new(dim, entries).expect("finite draws")
    }

    fn unitary(&mut self, dim: usize) -> ComplexMatrix {
        self.ginibre(dim, 1.0).qr_unitary()
    }
}

pub fn generate(spec: &EnsembleSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let EnsembleSpec { kind, dim, seed, scale } = *spec;
    let mut draws = Draws::new(seed);
    let m = match kind {
        EnsembleKind::Ginibre => draws.ginibre(dim, scale),
        EnsembleKind::Normal => normal(&mut draws, dim, scale),
        EnsembleKind::Hermitian => draws.ginibre(dim, scale).hermitian_part(),
        EnsembleKind::NilpotentJordan => {
            let mut m = ComplexMatrix::zeros(dim);
            for i in 0..dim - 1 {
                m[(i, i + 1)] = Complex64::new(scale, 0.0);
            }
            m
        }
        EnsembleKind::Diagonal => {
            let d: Vec<Complex64> = (0..dim).map(|_| draws.disk(scale)).collect();
            ComplexMatrix::from_diagonal(&d)?
        }
        // scale does not apply: the result must stay unitary
        EnsembleKind::Unitary => draws.unitary(dim),
        EnsembleKind::NearNormaloid => {
            let base = normal(&mut draws, dim, scale);
            let noise = draws.ginibre(dim, NEAR_NORMALOID_PERTURBATION * scale);
            &base + &noise
        }
    };
    Ok(m)
}

/// `U diag(z) U*` with `U` unitary from a Ginibre draw and `z` complex
/// Gaussian eigenvalues times `scale`.
fn normal(draws: &mut Draws, dim: usize, scale: f64) -> ComplexMatrix {
    let u = draws.unitary(dim);
    let z: Vec<Complex64> = (0..dim).map(|_| draws.complex_gaussian() * scale).collect();
    let d = ComplexMatrix::from_diagonal(&z).expect("finite draws");
    &(&u * &d) * &u.adjoint()
}

/// I.i.d. uniform points of the closed disk of radius `scale`.
pub fn generate_sequence(dim: usize, seed: u64, scale: f64) -> Result<SequenceSpec> {
    validate(dim, scale)?;
    let mut draws = Draws::new(seed);
    SequenceSpec::new((0..dim).map(|_| draws.disk(scale)).collect())
}
