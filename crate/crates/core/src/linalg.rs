//! Dense complex matrices, the Hermitian eigensolver and the spectral norm.
//!
//! Every other module builds on the two kernels here: [`eig_hermitian`]
//! (cyclic complex Jacobi) and [`spectral_norm`] (largest eigenvalue of
//! `A*A`).

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 256;

/// Maximum number of cyclic Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Relative off-diagonal Frobenius mass at which the Jacobi iteration stops.
pub const JACOBI_TOL: f64 = 1e-12;

/// Relative asymmetry above which an input is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense `n × n` complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, checking length and finiteness.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if let Some(index) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { dim, entries })
    }

    /// Real matrix from row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self> {
        let dim = diag.len();
        check_dim(dim)?;
        if let Some(index) = diag.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        Ok(m)
    }

    /// # Panics
    ///
    /// Panics if `dim` is zero or larger than [`MAX_DIM`].
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// # Panics
    ///
    /// Panics if `dim` is zero or larger than [`MAX_DIM`].
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| c * z).collect(),
        }
    }

    /// `A + λI`.
    pub fn shift(&self, lambda: Complex64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out[(i, i)] += lambda;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Largest entrywise deviation from Hermitian symmetry,
    /// `max |A_ij − conj(A_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `v ↦ A v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Quadratic form `⟨A v, v⟩ = v* A v`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> Complex64 {
        let av = self.apply(v);
        v.iter().zip(&av).map(|(x, y)| x.conj() * y).sum()
    }

    /// Product `A* A`, computed so that the result is exactly Hermitian.
    pub fn gram(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self[(k, i)].conj() * self[(k, j)];
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    /// `H_θ = (e^{−iθ}A + e^{iθ}A*) / 2`, exactly Hermitian by construction.
    pub fn rotated_hermitian_part(&self, theta: f64) -> Self {
        let rotation = Complex64::from_polar(1.0, -theta);
        self.scale(rotation).hermitian_part()
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let h = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = h;
                out[(j, i)] = h.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn eig_hermitian(&self) -> Result<HermitianEigen> {
        eig_hermitian(self)
    }

    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(self)
    }

    /// Unitary factor of a QR factorization, by Gram–Schmidt with one
    /// reorthogonalization pass. The triangular factor has a positive real
    /// diagonal, so `Q` is uniquely determined by the input.
    ///
    /// Columns that are numerically dependent on their predecessors are
    /// replaced by the next unused canonical basis vector.
    pub fn qr_unitary(&self) -> Self {
        let n = self.dim;
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        let mut fallback = 0;
        for j in 0..n {
            let mut v = self.column(j);
            let original = norm2(&v);
            orthogonalize(&mut v, &basis);
            orthogonalize(&mut v, &basis);
            let mut len = norm2(&v);
            while len <= 1e-10 * original.max(f64::MIN_POSITIVE) && fallback < n {
                v = vec![Complex64::new(0.0, 0.0); n];
                v[fallback] = Complex64::new(1.0, 0.0);
                fallback += 1;
                orthogonalize(&mut v, &basis);
                orthogonalize(&mut v, &basis);
                len = norm2(&v);
            }
            v.iter_mut().for_each(|z| *z /= len);
            basis.push(v);
        }
        let mut q = Self::zeros(n);
        for (j, col) in basis.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                q[(i, j)] = z;
            }
        }
        q
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
    }
    Ok(())
}

fn orthogonalize(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for q in basis {
        let proj: Complex64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
        for (x, a) in v.iter_mut().zip(q) {
            *x -= proj * a;
        }
    }
}

pub(crate) fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Spectral decomposition `H = V diag(λ) V*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("eigendecomposition is never empty")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Inputs whose asymmetry is at most `HERMITIAN_TOL · max(1, max|H_ij|)` are
/// symmetrized first; larger asymmetry is rejected. Each eigenvector has its
/// first component of modulus above `1e-10` made real and positive.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.dim();
    let asymmetry = h
        .hermitian_defect()
        .max((0..n).map(|i| h[(i, i)].im.abs()).fold(0.0, f64::max));
    if asymmetry > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NonHermitianInput { asymmetry });
    }

    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let total = a.frobenius_norm();
    let threshold = JACOBI_TOL * total;

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (k, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        fix_phase(&mut col);
        for (i, z) in col.into_iter().enumerate() {
            eigenvectors[(i, k)] = z;
        }
    }
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `G = diag(1, e^{−iφ}) · R(c, s)`,
/// where `φ = arg a[p][q]` and `R` is the real symmetric Jacobi rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let g = b.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = b / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + tau.hypot(1.0))
    } else {
        -1.0 / (-tau + tau.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    // G = [[gpp, gpq], [gqp, gqq]]
    let gpp = Complex64::new(c, 0.0);
    let gpq = Complex64::new(s, 0.0);
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

fn fix_phase(col: &mut [Complex64]) {
    if let Some(z) = col.iter().copied().find(|z| z.norm() > 1e-10) {
        let unit = z.conj() / z.norm();
        col.iter_mut().for_each(|x| *x *= unit);
    }
}

/// Operator norm `‖A‖ = sqrt(λ_max(A*A))`.
pub fn spectral_norm(a: &ComplexMatrix) -> f64 {
    if a.dim() == 1 {
        return a[(0, 0)].norm();
    }
    let gram = a.gram();
    if gram.is_zero() {
        return 0.0;
    }
    let eig = eig_hermitian(&gram).expect("Jacobi converges on an exactly Hermitian Gram matrix");
    eig.max_eigenvalue().max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = (0..n * n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        ComplexMatrix::new(n, entries).unwrap()
    }

    fn nilpotent() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(ComplexMatrix::new(0, vec![]), Err(Error::ZeroDimension));
        assert_eq!(
            ComplexMatrix::new(2, vec![c(0.0, 0.0); 3]),
            Err(Error::LengthMismatch { expected: 4, found: 3 })
        );
        assert_eq!(
            ComplexMatrix::new(1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { index: 0 })
        );
        assert!(matches!(
            ComplexMatrix::from_diagonal(&vec![c(1.0, 0.0); 257]),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn adjoint_examples() {
        let d = ComplexMatrix::from_diagonal(&[c(0.0, 1.0)]).unwrap();
        assert_eq!(d.adjoint()[(0, 0)], c(0.0, -1.0));
        let a = nilpotent().adjoint();
        assert_eq!(a, ComplexMatrix::from_real(2, &[0.0, 0.0, 1.0, 0.0]).unwrap());
        let r = random_matrix(5, 3);
        assert_eq!(r.adjoint().adjoint(), r);
    }

    #[test]
    fn rotated_hermitian_part_examples() {
        let d = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(d.rotated_hermitian_part(0.0), d);
        let h = nilpotent().rotated_hermitian_part(0.0);
        assert_eq!(h, ComplexMatrix::from_real(2, &[0.0, 0.5, 0.5, 0.0]).unwrap());

        let a = random_matrix(4, 11);
        let theta = 0.7;
        let rotated = a.scale(Complex64::from_polar(1.0, -theta));
        assert_eq!(a.rotated_hermitian_part(theta), rotated.rotated_hermitian_part(0.0));
        assert_eq!(a.rotated_hermitian_part(theta).hermitian_defect(), 0.0);
    }

    #[test]
    fn eig_small_closed_forms() {
        let d = ComplexMatrix::from_real(3, &[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        assert_eq!(d.eig_hermitian().unwrap().eigenvalues, vec![1.0, 2.0, 3.0]);

        let x = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let eig = x.eig_hermitian().unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_residual_and_orthonormality() {
        for (n, seed) in [(1, 1), (2, 2), (7, 3), (16, 4), (40, 5)] {
            let h = random_matrix(n, seed).hermitian_part();
            let eig = h.eig_hermitian().unwrap();
            let scale = h.frobenius_norm().max(1.0);
            assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            for k in 0..n {
                let v = eig.eigenvector(k);
                let hv = h.apply(&v);
                let residual: f64 = hv
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a - eig.eigenvalues[k] * b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(residual <= 1e-10 * scale, "n={n} k={k} residual={residual}");
                for j in 0..n {
                    let w = eig.eigenvector(j);
                    let dot: Complex64 = w.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    let expected = if j == k { 1.0 } else { 0.0 };
                    assert!((dot - expected).norm() <= 1e-10);
                }
            }
            let trace = h.trace().re;
            let sum: f64 = eig.eigenvalues.iter().sum();
            assert!((sum - trace).abs() <= 1e-9 * trace.abs().max(1.0));
        }
    }

    #[test]
    fn eig_phase_convention() {
        let h = random_matrix(6, 9).hermitian_part();
        let eig = h.eig_hermitian().unwrap();
        for k in 0..6 {
            let first = eig.eigenvector(k).into_iter().find(|z| z.norm() > 1e-10).unwrap();
            assert!(first.re > 0.0 && first.im.abs() < 1e-14);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        assert!(matches!(
            nilpotent().eig_hermitian(),
            Err(Error::NonHermitianInput { .. })
        ));
        // drift below tolerance is absorbed
        let mut h = ComplexMatrix::from_real(2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        h[(0, 1)] += c(1e-14, 0.0);
        assert!(h.eig_hermitian().is_ok());
    }

    #[test]
    fn spectral_norm_examples() {
        assert_eq!(ComplexMatrix::identity(2).spectral_norm(), 1.0);
        assert!((nilpotent().spectral_norm() - 1.0).abs() < 1e-15);
        let ones = ComplexMatrix::from_real(2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!((ones.spectral_norm() - 2.0).abs() < 1e-14);
        assert_eq!(ComplexMatrix::zeros(3).spectral_norm(), 0.0);
    }

    #[test]
    fn spectral_norm_scaling_and_adjoint() {
        let a = random_matrix(6, 21);
        let norm = a.spectral_norm();
        let z = c(-1.3, 0.4);
        assert!((a.scale(z).spectral_norm() - z.norm() * norm).abs() <= 1e-10 * norm);
        assert!((a.adjoint().spectral_norm() - norm).abs() <= 1e-10 * norm);
    }

    #[test]
    fn qr_unitary_is_unitary() {
        let q = random_matrix(9, 5).qr_unitary();
        let defect = (&(&q.adjoint() * &q) - &ComplexMatrix::identity(9)).frobenius_norm();
        assert!(defect < 1e-12);

        // rank-deficient input still yields a unitary
        let q = ComplexMatrix::zeros(3).qr_unitary();
        assert_eq!(q, ComplexMatrix::identity(3));
    }
}
