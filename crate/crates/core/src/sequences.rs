//! Finite truncations of bounded complex sequences, the diagonal operator
//! `A_x = diag(x_1, …, x_N)` and the identity
//! `sup_{|λ| ≤ M_x} sup_n |x_n + λ| = 2 M_x`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, MAX_DIM};

/// Default polar grid: angles × radii on the disk `|λ| ≤ M_x`.
pub const DEFAULT_GRID_ANGLES: usize = 64;
pub const DEFAULT_GRID_RADII: usize = 16;

/// Slack allowed on the inequality side, `sup ≤ 2 M_x + 1e-12`.
pub const INEQUALITY_SLACK: f64 = 1e-12;

/// Relative gap below which the equality is declared to hold.
pub const EQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec {
    terms: Vec<Complex64>,
}

impl SequenceSpec {
    pub fn new(terms: Vec<Complex64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(index) = terms.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Complex64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `M_x = max |x_n|`.
    pub fn sup_modulus(&self) -> f64 {
        self.terms.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Smallest index attaining `M_x`.
    pub fn argmax(&self) -> usize {
        let m = self.sup_modulus();
        self.terms
            .iter()
            .position(|z| z.norm() == m)
            .expect("maximum is attained")
    }

    /// `sup_n |x_n + λ|`.
    pub fn translated_sup(&self, lambda: Complex64) -> f64 {
        self.terms.iter().map(|&x| (x + lambda).norm()).fold(0.0, f64::max)
    }

    pub fn rotate(&self, phi: f64) -> Self {
        let r = Complex64::from_polar(1.0, phi);
        Self {
            terms: self.terms.iter().map(|&z| r * z).collect(),
        }
    }
}

pub fn sup_modulus_seq(x: &SequenceSpec) -> f64 {
    x.sup_modulus()
}

pub fn diagonal_operator(x: &SequenceSpec) -> Result<ComplexMatrix> {
    if x.len() > MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim: x.len(),
            max: MAX_DIM,
        });
    }
    ComplexMatrix::from_diagonal(x.terms())
}

pub fn translated_sup(x: &SequenceSpec, lambda: Complex64) -> f64 {
    x.translated_sup(lambda)
}

/// `sup_n |x_n + λ| ≤ 2 M_x` for `|λ| ≤ M_x`.
pub fn inequality_check(x: &SequenceSpec, lambda: Complex64) -> Result<bool> {
    let m = x.sup_modulus();
    if lambda.norm() > m + INEQUALITY_SLACK {
        return Err(Error::LambdaOutOfDisk {
            modulus: lambda.norm(),
            radius: m,
        });
    }
    Ok(x.translated_sup(lambda) <= 2.0 * m + INEQUALITY_SLACK)
}

/// Outcome of checking `sup_{|λ| ≤ M_x} sup_n |x_n + λ| = 2 M_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremVerdict {
    pub m_x: f64,
    /// Largest `sup_n |x_n + λ|` found over the witness and the grid.
    pub sup_value: f64,
    /// First λ (witness, then grid) attaining `sup_value`.
    pub witness_lambda: Complex64,
    /// `sup_n |x_n + λ*|` at the analytic witness `λ* = x_{n*}`.
    pub witness_value: f64,
    /// Largest value over grid points alone.
    pub grid_max: f64,
    /// `|sup_value − 2 M_x|`.
    pub gap: f64,
    pub holds: bool,
}

/// Evaluates the double supremum at the analytic witness `λ* = x_{n*}`
/// (where `|x_{n*}| = M_x`, smallest index) and on a polar grid of
/// `angles × radii` points covering the closed disk `|λ| ≤ M_x`, radii
/// `M_x·j/radii` for `j = 1..=radii` plus the origin.
pub fn verify_main_theorem(x: &SequenceSpec, angles: usize, radii: usize) -> Result<TheoremVerdict> {
    if angles == 0 || radii == 0 {
        return Err(Error::InvalidParameter(
            "polar grid needs at least one angle and one radius".into(),
        ));
    }
    let m = x.sup_modulus();
    if m == 0.0 {
        return Ok(TheoremVerdict {
            m_x: 0.0,
            sup_value: 0.0,
            witness_lambda: Complex64::new(0.0, 0.0),
            witness_value: 0.0,
            grid_max: 0.0,
            gap: 0.0,
            holds: true,
        });
    }

    let witness = x.terms()[x.argmax()];
    let witness_value = x.translated_sup(witness);
    let mut best_value = witness_value;
    let mut best_lambda = witness;

    let mut grid_max = x.translated_sup(Complex64::new(0.0, 0.0));
    for j in 1..=radii {
        let r = m * j as f64 / radii as f64;
        for k in 0..angles {
            let lambda = Complex64::from_polar(r, TAU * k as f64 / angles as f64);
            let v = x.translated_sup(lambda);
            grid_max = grid_max.max(v);
            if v > best_value {
                best_value = v;
                best_lambda = lambda;
            }
        }
    }

    let gap = (best_value - 2.0 * m).abs();
    Ok(TheoremVerdict {
        m_x: m,
        sup_value: best_value,
        witness_lambda: best_lambda,
        witness_value,
        grid_max,
        gap,
        holds: gap <= EQUALITY_TOL * m.max(1.0),
    })
}
