//! Normaloid classification (`w(A) = ‖A‖`) and the results built on it:
//! the maximal-modulus translation lemma on finite sets, the norm
//! additivity characterization `‖A + λ‖ = ‖A‖ + |λ|`, the supremum of
//! `‖A + λ‖` over the closed numerical range, and the membership condition
//! `‖A‖ λ/|λ| ∈ cl W(A)` that additivity forces.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::numrange::{boundary_sweep, NumericalRangeProfile, DEFAULT_SAMPLES};

/// Default relative tolerance of the normaloid predicate.
pub const DEFAULT_NORMALOID_TOL: f64 = 1e-8;

/// Tolerance used when certifying a theorem witness.
pub const WITNESS_TOL: f64 = 1e-7;

/// Interior lattice spacing for the corollary supremum, as a fraction of `w(A)`.
pub const LATTICE_DIVISIONS: f64 = 32.0;

/// A nonempty finite set of complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteCompactSet {
    points: Vec<Complex64>,
}

impl FiniteCompactSet {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(index) = points.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// `|K| = max |k|`.
    pub fn sup_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `|K + s| = max |k + s|`.
    pub fn translated_sup_modulus(&self, s: Complex64) -> f64 {
        self.points.iter().map(|&k| (k + s).norm()).fold(0.0, f64::max)
    }

    /// First point of maximal modulus. For that `s`, `2s ∈ K + s` gives
    /// `|K + s| ≥ 2|s| = |K| + |s|`, and the triangle inequality gives the
    /// reverse.
    pub fn lemma_translate(&self) -> Result<Complex64> {
        let m = self.sup_modulus();
        if m == 0.0 {
            return Err(Error::ZeroSet);
        }
        Ok(*self
            .points
            .iter()
            .find(|z| z.norm() == m)
            .expect("maximum is attained by some point"))
    }

    pub fn rotate(&self, phi: f64) -> Self {
        let r = Complex64::from_polar(1.0, phi);
        Self {
            points: self.points.iter().map(|&z| r * z).collect(),
        }
    }
}

pub fn sup_modulus(set: &FiniteCompactSet) -> f64 {
    set.sup_modulus()
}

pub fn lemma_translate(set: &FiniteCompactSet) -> Result<Complex64> {
    set.lemma_translate()
}

/// Norm, radius and the sweep behind them, computed once and reused by the
/// classification queries.
#[derive(Debug, Clone)]
pub struct OperatorAnalysis<'a> {
    matrix: &'a ComplexMatrix,
    pub profile: NumericalRangeProfile,
    pub norm: f64,
}

impl<'a> OperatorAnalysis<'a> {
    pub fn new(matrix: &'a ComplexMatrix) -> Result<Self> {
        Self::with_samples(matrix, DEFAULT_SAMPLES)
    }

    pub fn with_samples(matrix: &'a ComplexMatrix, samples: usize) -> Result<Self> {
        let profile = boundary_sweep(matrix, samples)?;
        let norm = matrix.spectral_norm();
        Ok(Self {
            matrix,
            profile,
            norm,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix
    }

    pub fn radius(&self) -> f64 {
        self.profile.radius
    }

    /// `max(1, ‖A‖)`.
    pub fn scale(&self) -> f64 {
        self.norm.max(1.0)
    }

    /// `w(A)/‖A‖`, defined as 1 for the zero operator.
    pub fn ratio(&self) -> f64 {
        if self.norm == 0.0 {
            1.0
        } else {
            self.radius() / self.norm
        }
    }

    pub fn is_normaloid(&self, tol: f64) -> bool {
        self.norm - self.radius() <= tol * self.scale()
    }

    pub fn is_zero(&self) -> bool {
        self.norm == 0.0 || self.radius() <= 1e-12 * self.scale()
    }

    /// The extremal point of cl W(A), which satisfies
    /// `‖A + λ‖ = ‖A‖ + |λ|` when `A` is normaloid.
    pub fn theorem_witness(&self) -> Result<Complex64> {
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        if !self.is_normaloid(DEFAULT_NORMALOID_TOL) {
            return Err(Error::NotNormaloid { ratio: self.ratio() });
        }
        Ok(self.profile.extremal_point)
    }

    /// `‖A‖ + |λ| − ‖A + λ‖`, nonnegative up to rounding.
    pub fn additivity_defect(&self, lambda: Complex64) -> f64 {
        self.norm + lambda.norm() - self.matrix.shift(lambda).spectral_norm()
    }

    pub fn additivity_holds(&self, lambda: Complex64, tol: f64) -> Result<bool> {
        check_lambda(lambda)?;
        check_tol(tol)?;
        Ok(self.additivity_defect(lambda) <= tol * self.scale())
    }

    pub fn bb_condition(&self, lambda: Complex64) -> Result<bool> {
        check_lambda(lambda)?;
        let target = lambda / lambda.norm() * self.norm;
        Ok(self.profile.contains(target, self.profile.default_tol()))
    }

    /// Candidate scalars for the corollary supremum: swept boundary points,
    /// the extremal point and a triangular lattice over the interior, all
    /// within `|λ| ≤ ‖A‖`.
    pub fn corollary_candidates(&self) -> Vec<Complex64> {
        let mut candidates: Vec<Complex64> = self.profile.boundary_points().collect();
        candidates.push(self.profile.extremal_point);

        let spacing = self.radius() / LATTICE_DIVISIONS;
        if spacing > 0.0 {
            let (mut x0, mut x1, mut y0, mut y1) =
                (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
            for z in self.profile.boundary_points() {
                x0 = x0.min(z.re);
                x1 = x1.max(z.re);
                y0 = y0.min(z.im);
                y1 = y1.max(z.im);
            }
            let tol = self.profile.default_tol();
            let row_step = spacing * 3f64.sqrt() / 2.0;
            let rows = ((y1 - y0) / row_step).floor() as usize;
            for row in 0..=rows {
                let y = y0 + row as f64 * row_step;
                let offset = if row % 2 == 1 { spacing / 2.0 } else { 0.0 };
                let cols = ((x1 - x0 - offset) / spacing).floor().max(-1.0) + 1.0;
                for col in 0..cols as usize {
                    let z = Complex64::new(x0 + offset + col as f64 * spacing, y);
                    if self.profile.contains(z, tol) {
                        candidates.push(z);
                    }
                }
            }
        }
        let bound = self.norm + 1e-9 * self.scale();
        candidates.retain(|z| z.norm() <= bound);
        candidates
    }

    /// `sup ‖A + λ‖` over `λ ∈ cl W(A)`, and a maximizing `λ`. Ties go to
    /// the first candidate.
    pub fn corollary_sup(&self) -> CorollarySup {
        let candidates = self.corollary_candidates();
        let values: Vec<f64> = candidates
            .par_iter()
            .map(|&z| self.matrix.shift(z).spectral_norm())
            .collect();
        let mut best = 0;
        for (k, &v) in values.iter().enumerate() {
            if v > values[best] {
                best = k;
            }
        }
        CorollarySup {
            value: values.get(best).copied().unwrap_or(self.norm),
            lambda: candidates.get(best).copied().unwrap_or_default(),
            candidates: candidates.len(),
        }
    }

    pub fn report(&self, tol: f64) -> Result<NormaloidReport> {
        check_tol(tol)?;
        let is_normaloid = self.is_normaloid(tol);
        let witness = if is_normaloid && !self.is_zero() {
            Some(self.profile.extremal_point)
        } else {
            None
        };
        let corollary = self.corollary_sup();
        Ok(NormaloidReport {
            norm: self.norm,
            radius: self.radius(),
            ratio: self.ratio(),
            is_normaloid,
            witness,
            corollary_sup: corollary.value,
            defect: 2.0 * self.norm - corollary.value,
        })
    }
}

/// Result of maximizing `‖A + λ‖` over the candidate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollarySup {
    pub value: f64,
    pub lambda: Complex64,
    pub candidates: usize,
}

/// Everything the classifier knows about one operator.
#[derive(Debug, Clone, PartialEq)]
pub struct NormaloidReport {
    pub norm: f64,
    pub radius: f64,
    pub ratio: f64,
    pub is_normaloid: bool,
    pub witness: Option<Complex64>,
    pub corollary_sup: f64,
    /// `2‖A‖ − corollary_sup`.
    pub defect: f64,
}

fn check_lambda(lambda: Complex64) -> Result<()> {
    if lambda.re == 0.0 && lambda.im == 0.0 {
        return Err(Error::ZeroLambda);
    }
    if !lambda.is_finite() {
        return Err(Error::NonFinite { index: 0 });
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")))
    }
}

/// `‖A + λI‖ ≥ ‖A‖ + |λ| − tol · max(1, ‖A‖)` for nonzero `λ`.
pub fn additivity_holds(a: &ComplexMatrix, lambda: Complex64, tol: f64) -> Result<bool> {
    check_lambda(lambda)?;
    check_tol(tol)?;
    let norm = a.spectral_norm();
    let defect = norm + lambda.norm() - a.shift(lambda).spectral_norm();
    Ok(defect <= tol * norm.max(1.0))
}

pub fn theorem_witness(a: &ComplexMatrix) -> Result<Complex64> {
    OperatorAnalysis::new(a)?.theorem_witness()
}

pub fn corollary_sup(a: &ComplexMatrix) -> f64 {
    OperatorAnalysis::new(a)
        .expect("support sweep of a valid matrix")
        .corollary_sup()
        .value
}

pub fn is_normaloid(a: &ComplexMatrix, tol: f64) -> Result<NormaloidReport> {
    OperatorAnalysis::new(a)?.report(tol)
}

pub fn bb_condition(a: &ComplexMatrix, lambda: Complex64) -> Result<bool> {
    check_lambda(lambda)?;
    OperatorAnalysis::new(a)?.bb_condition(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn set(points: &[Complex64]) -> FiniteCompactSet {
        FiniteCompactSet::new(points.to_vec()).unwrap()
    }

    fn diag(d: &[Complex64]) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(d).unwrap()
    }

    fn nilpotent() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn set_validation() {
        assert_eq!(FiniteCompactSet::new(vec![]), Err(Error::EmptySet));
        assert!(matches!(
            FiniteCompactSet::new(vec![c(f64::INFINITY, 0.0)]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn sup_modulus_examples() {
        assert_eq!(set(&[c(0.0, 0.0)]).sup_modulus(), 0.0);
        assert_eq!(set(&[c(1.0, 0.0), c(-0.5, 0.0), c(0.0, 0.3)]).sup_modulus(), 1.0);
        assert_eq!(set(&[c(0.0, 3.0), c(-4.0, 0.0)]).sup_modulus(), 4.0);
    }

    #[test]
    fn lemma_examples() {
        let k = set(&[c(1.0, 0.0), c(-0.5, 0.0), c(0.0, 0.3)]);
        let s = k.lemma_translate().unwrap();
        assert_eq!(s, c(1.0, 0.0));
        // |1+1| = 2, |−0.5+1| = 0.5, |0.3i+1| ≈ 1.044
        assert_eq!(k.translated_sup_modulus(s), 2.0);

        let k = set(&[c(-2.0, 0.0)]);
        assert_eq!(k.lemma_translate().unwrap(), c(-2.0, 0.0));
        assert_eq!(k.translated_sup_modulus(c(-2.0, 0.0)), 4.0);

        assert_eq!(set(&[c(0.0, 0.0)]).lemma_translate(), Err(Error::ZeroSet));
    }

    #[test]
    fn lemma_tie_break_is_first() {
        let k = set(&[c(0.0, 0.5), c(0.0, -2.0), c(2.0, 0.0)]);
        assert_eq!(k.lemma_translate().unwrap(), c(0.0, -2.0));
    }

    #[test]
    fn additivity_examples() {
        let d = diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(additivity_holds(&d, c(1.0, 0.0), 1e-9).unwrap());
        // ‖[[1/2, 1], [0, 1/2]]‖ = (1 + √2)/2 < 3/2
        let n = nilpotent();
        assert!(!additivity_holds(&n, c(0.5, 0.0), 1e-9).unwrap());
        let analysis = OperatorAnalysis::new(&n).unwrap();
        let expected_defect = 1.5 - (1.0 + 2f64.sqrt()) / 2.0;
        assert!((analysis.additivity_defect(c(0.5, 0.0)) - expected_defect).abs() < 1e-12);
        assert_eq!(additivity_holds(&d, c(0.0, 0.0), 1e-9), Err(Error::ZeroLambda));
        assert!(additivity_holds(&d, c(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn witness_examples() {
        let a = diag(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]);
        let w = theorem_witness(&a).unwrap();
        assert!((w - c(1.0, 0.0)).norm() < 1e-12);
        assert!((a.shift(w).spectral_norm() - 2.0).abs() < 1e-12);

        let z = c(0.6, -0.8);
        let s = diag(&[z]);
        let w = theorem_witness(&s).unwrap();
        assert!((w - z).norm() < 1e-14);
        assert!((s.shift(w).spectral_norm() - 2.0).abs() < 1e-14);

        assert!(matches!(theorem_witness(&nilpotent()), Err(Error::NotNormaloid { .. })));
        assert_eq!(theorem_witness(&ComplexMatrix::zeros(2)), Err(Error::ZeroOperator));
    }

    #[test]
    fn corollary_examples() {
        let d = diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!((corollary_sup(&d) - 2.0).abs() < 1e-12);

        let expected = (1.0 + 2f64.sqrt()) / 2.0;
        let nil = nilpotent();
        let n = OperatorAnalysis::new(&nil).unwrap();
        let sup = n.corollary_sup();
        assert!((sup.value - expected).abs() < 1e-6, "{}", sup.value);
        assert!(sup.candidates > 512);

        assert_eq!(corollary_sup(&ComplexMatrix::zeros(2)), 0.0);
    }

    #[test]
    fn report_examples() {
        let r = is_normaloid(&diag(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]), 1e-8).unwrap();
        assert!(r.is_normaloid);
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert!(r.witness.is_some());
        assert!(r.defect.abs() < 1e-9);

        let r = is_normaloid(&nilpotent(), 1e-8).unwrap();
        assert!(!r.is_normaloid);
        assert!((r.ratio - 0.5).abs() < 1e-12);
        assert!(r.witness.is_none());
        assert!(r.defect > 0.79);

        let r = is_normaloid(&ComplexMatrix::zeros(3), 1e-8).unwrap();
        assert!(r.is_normaloid);
        assert_eq!(r.ratio, 1.0);
        assert_eq!(r.witness, None);
        assert_eq!(r.corollary_sup, 0.0);

        let h = ComplexMatrix::from_real(3, &[1.0, 2.0, 0.0, 2.0, -3.0, 1.0, 0.0, 1.0, 0.5]).unwrap();
        assert!(is_normaloid(&h, 1e-8).unwrap().is_normaloid);
    }

    #[test]
    fn bb_examples() {
        let d = diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(bb_condition(&d, c(1.0, 0.0)).unwrap());
        assert!(!bb_condition(&d, c(0.0, 1.0)).unwrap());
        let z = c(-1.5, 2.0);
        assert!(bb_condition(&diag(&[z]), z).unwrap());
        assert_eq!(bb_condition(&d, c(0.0, 0.0)), Err(Error::ZeroLambda));
    }
}
