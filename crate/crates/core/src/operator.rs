//! Dense complex operators and the Hermitian functional calculus.
//!
//! Every operator in the crate (number operators, effects, modular objects,
//! density matrices) is an [`Operator`]: a finite dense complex matrix. Norms
//! are operator norms (largest singular value) unless a name says otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default relative tolerance for Hermitian checks and eigen-based predicates.
pub const DEFAULT_TOL: f64 = 1e-10;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct Operator(DMatrix<C64>);

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator{}x{}", self.rows(), self.cols())?;
        if self.rows() * self.cols() <= 64 {
            write!(f, "{:?}", self.0.as_slice())?;
        }
        Ok(())
    }
}

impl Operator {
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::ShapeMismatch("empty operator".into()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(m))
    }

    /// Wraps a matrix produced by internal arithmetic on finite data.
    pub(crate) fn wrap(m: DMatrix<C64>) -> Self {
        debug_assert!(m.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        Self(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(d: usize) -> Self {
        Self(DMatrix::identity(d, d))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self::wrap(DMatrix::from_fn(rows, cols, f))
    }

    /// Row-major construction; `rows` must be rectangular.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged or empty rows".into()));
        }
        Self::from_matrix(DMatrix::from_fn(r, c, |i, j| rows[i][j]))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let d = diag.len();
        Self::from_fn(d, d, |i, j| if i == j { diag[i] } else { C64::new(0.0, 0.0) })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        Self::from_fn(d, d, |i, j| if i == j { c(diag[i]) } else { C64::new(0.0, 0.0) })
    }

    /// Rank-one operator `u v*`.
    pub fn outer(u: &DVector<C64>, v: &DVector<C64>) -> Self {
        Self::wrap(u * v.adjoint())
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Entrywise complex conjugate in the canonical basis.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self(&self.0 * c(s))
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows())
        } else {
            Err(Error::NotSquare { rows: self.rows(), cols: self.cols() })
        }
    }

    pub(crate) fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )))
        }
    }

    pub fn trace(&self) -> Result<C64> {
        self.require_square()?;
        Ok(self.0.trace())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(Self(&self.0 * &rhs.0))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.require_same_shape(rhs)?;
        Ok(Self(&self.0 + &rhs.0))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.require_same_shape(rhs)?;
        Ok(Self(&self.0 - &rhs.0))
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.0 * v
    }

    /// `[[Re A, −Im A], [Im A, Re A]]`, the action on `(Re z, Im z)`.
    fn real_embedding(&self) -> DMatrix<f64> {
        let (m, n) = self.shape();
        DMatrix::from_fn(2 * m, 2 * n, |i, j| {
            let z = self.0[(i % m, j % n)];
            match (i < m, j < n) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        })
    }

    /// Singular values, descending.
    ///
    /// The complex SVD in nalgebra 0.35 returns wrong factors for some
    /// structured inputs (the rank-one commutator defect at d = 16 or 32 among
    /// them), so the decomposition runs on the real embedding, where every
    /// singular value appears twice.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.real_embedding().svd(false, false).singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s.into_iter().step_by(2).collect()
    }

    /// Largest singular value with a unit left singular vector.
    pub fn top_left_singular(&self) -> (f64, DVector<C64>) {
        let m = self.rows();
        let svd = self.real_embedding().svd(true, false);
        let k = svd.singular_values.imax();
        let u = svd.u.as_ref().expect("requested");
        let v = DVector::from_fn(m, |i, _| C64::new(u[(i, k)], u[(i + m, k)]));
        let norm = v.norm();
        (svd.singular_values[k], v.map(|z| z / norm))
    }

    /// Operator norm (largest singular value), from the top eigenvalue of
    /// the smaller Gram matrix of the rescaled operator.
    pub fn norm(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        if self.rows() == 1 || self.cols() == 1 {
            return self.frobenius_norm();
        }
        let a = self.0.map(|z| z / scale);
        let gram = if self.rows() >= self.cols() { a.adjoint() * &a } else { &a * a.adjoint() };
        let gram = (&gram + gram.adjoint()).map(|z| z * 0.5);
        let top = SymmetricEigen::new(gram).eigenvalues.max();
        scale * top.max(0.0).sqrt()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Operator norm of `self - other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.checked_sub(other)?.norm())
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let mut m = DMatrix::zeros(r1 + r2, c1 + c2);
        m.view_mut((0, 0), (r1, c1)).copy_from(&self.0);
        m.view_mut((r1, c1), (r2, c2)).copy_from(&other.0);
        Self(m)
    }

    /// `‖A − A*‖`, or an error for non-square input.
    pub fn hermitian_defect(&self) -> Result<f64> {
        self.require_square()?;
        Ok(Self(&self.0 - self.0.adjoint()).norm())
    }

    /// Hermitian within `tol·max(1, ‖A‖)`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        match self.hermitian_defect() {
            Ok(r) => r <= tol * self.norm().max(1.0),
            Err(_) => false,
        }
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * c(0.5))
    }

    pub fn column(&self, j: usize) -> DVector<C64> {
        self.0.column(j).into_owned()
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.checked_add(rhs).expect("operator addition shape mismatch")
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.checked_sub(rhs).expect("operator subtraction shape mismatch")
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.checked_mul(rhs).expect("operator product shape mismatch")
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator(-&self.0)
    }
}

/// Spectral decomposition of a Hermitian operator, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Unitary whose columns are the eigenvectors, in eigenvalue order.
    pub eigenvectors: Operator,
}

impl HermitianSpectrum {
    /// Decomposes `h` after checking `‖h − h*‖ ≤ tol·max(1, ‖h‖)`; the input
    /// is symmetrized before the decomposition.
    pub fn new(h: &Operator, tol: f64) -> Result<Self> {
        let residual = h.hermitian_defect()?;
        if residual > tol * h.norm().max(1.0) {
            return Err(Error::NotHermitian { residual });
        }
        let eig = SymmetricEigen::new(h.hermitian_part().into_matrix());
        let d = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(d, d, |i, j| eig.eigenvectors[(i, order[j])]);
        Ok(Self { eigenvalues, eigenvectors: Operator::wrap(vectors) })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `V f(Λ) V*`. Fails with [`Error::Domain`] at the first eigenvalue where
    /// `f` is not finite.
    pub fn apply(&self, f: impl Fn(f64) -> C64) -> Result<Operator> {
        let mut values = Vec::with_capacity(self.dim());
        for &lambda in &self.eigenvalues {
            let v = f(lambda);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Domain { eigenvalue: lambda });
            }
            values.push(v);
        }
        let v = self.eigenvectors.as_matrix();
        let mut scaled = v.clone();
        for (j, fv) in values.iter().enumerate() {
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fv);
        }
        Ok(Operator::wrap(scaled * v.adjoint()))
    }

    /// `‖V Λ V* − h‖`.
    pub fn reconstruction_residual(&self, h: &Operator) -> f64 {
        let rebuilt = self.apply(c).expect("identity is finite");
        (&rebuilt - h).norm()
    }

    /// `‖V*V − I‖`.
    pub fn unitarity_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        (&(&v.adjoint() * v) - &Operator::identity(self.dim())).norm()
    }

    /// Spectral projection onto the eigenvalues in `[lo, hi)`.
    pub fn projection(&self, lo: f64, hi: f64) -> Operator {
        self.apply(|x| if x >= lo && x < hi { c(1.0) } else { c(0.0) })
            .expect("indicator is finite")
    }

    /// Projections onto the distinct eigenvalues, grouping values closer than
    /// `tol·max(1, max|λ|)`.
    pub fn eigenspace_projections(&self, tol: f64) -> Vec<(f64, Operator)> {
        let scale = self.eigenvalues.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            match groups.last_mut() {
                Some((rep, idx)) if (lambda - *rep).abs() <= tol * scale => idx.push(k),
                _ => groups.push((lambda, vec![k])),
            }
        }
        let v = self.eigenvectors.as_matrix();
        groups
            .into_iter()
            .map(|(lambda, idx)| {
                let cols = DMatrix::from_fn(self.dim(), idx.len(), |i, j| v[(i, idx[j])]);
                (lambda, Operator::wrap(&cols * cols.adjoint()))
            })
            .collect()
    }
}

/// Hermitian functional calculus `f(H) = V f(Λ) V*` at the default tolerance.
pub fn funcalc(h: &Operator, f: impl Fn(f64) -> C64) -> Result<Operator> {
    HermitianSpectrum::new(h, DEFAULT_TOL)?.apply(f)
}

/// `funcalc` for real-valued `f`.
pub fn funcalc_re(h: &Operator, f: impl Fn(f64) -> f64) -> Result<Operator> {
    funcalc(h, |x| c(f(x)))
}

/// Unitary `e^{i t H}` for Hermitian `H`.
pub fn expi(h: &Operator, t: f64) -> Result<Operator> {
    funcalc(h, |x| C64::from_polar(1.0, t * x))
}

/// Classification of an operator against `0 ≤ A ≤ I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EffectClass {
    NotEffect,
    Effect,
    Projection,
}

/// Effect if Hermitian within `tol` with spectrum in `[−tol, 1+tol]`;
/// projection if additionally `‖A² − A‖ ≤ tol`.
pub fn is_effect(a: &Operator, tol: f64) -> Result<EffectClass> {
    a.require_square()?;
    let spectrum = match HermitianSpectrum::new(a, tol) {
        Ok(s) => s,
        Err(Error::NotHermitian { .. }) => return Ok(EffectClass::NotEffect),
        Err(e) => return Err(e),
    };
    if spectrum.min() < -tol || spectrum.max() > 1.0 + tol {
        return Ok(EffectClass::NotEffect);
    }
    let idempotency = (&(a * a) - a).norm();
    Ok(if idempotency <= tol { EffectClass::Projection } else { EffectClass::Effect })
}

/// Hilbert–Schmidt inner product `⟨A, B⟩ = tr(B* A)`.
pub fn hs_inner(a: &Operator, b: &Operator) -> Result<C64> {
    a.require_same_shape(b)?;
    Ok(a.as_matrix()
        .iter()
        .zip(b.as_matrix().iter())
        .map(|(x, y)| x * y.conj())
        .sum())
}

/// Smallest and largest eigenvalue of a Hermitian operator.
pub fn spectral_bounds(h: &Operator) -> Result<(f64, f64)> {
    let s = HermitianSpectrum::new(h, DEFAULT_TOL)?;
    Ok((s.min(), s.max()))
}

/// Checks that `t` is a density operator: Hermitian, positive and of unit
/// trace, all within `tol`.
pub fn require_density(t: &Operator, tol: f64) -> Result<HermitianSpectrum> {
    t.require_square()?;
    let spectrum = HermitianSpectrum::new(t, tol)
        .map_err(|e| Error::NotDensity(e.to_string()))?;
    if spectrum.min() < -tol {
        return Err(Error::NotDensity(format!("negative eigenvalue {:.3e}", spectrum.min())));
    }
    let tr = t.trace()?;
    if (tr - c(1.0)).norm() > tol {
        return Err(Error::NotDensity(format!("trace {tr}")));
    }
    Ok(spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[(f64, f64)]]) -> Operator {
        Operator::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&(a, b)| C64::new(a, b)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn funcalc_identity_on_diagonal() {
        let h = Operator::from_real_diagonal(&[0.0, 1.0, 2.0]);
        let out = funcalc_re(&h, |x| x).unwrap();
        assert!(out.distance(&h).unwrap() < 1e-15);
    }

    #[test]
    fn funcalc_exponential_decay() {
        let h = Operator::from_real_diagonal(&[0.0, std::f64::consts::LN_2]);
        let out = funcalc_re(&h, |x| (-x).exp()).unwrap();
        let want = Operator::from_real_diagonal(&[1.0, 0.5]);
        assert!(out.distance(&want).unwrap() < 1e-15);
    }

    #[test]
    fn funcalc_exp_of_flip() {
        let h = m(&[&[(0.0, 0.0), (1.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0)]]);
        let out = funcalc_re(&h, f64::exp).unwrap();
        // power series of exp([[0,1],[1,0]]) summed until terms underflow
        let mut term = Operator::identity(2);
        let mut sum = Operator::identity(2);
        for k in 1..40 {
            term = (&term * &h).scale_re(1.0 / k as f64);
            sum = &sum + &term;
        }
        assert!(out.distance(&sum).unwrap() < 1e-14);
        assert!((out.get(0, 0).re - 1f64.cosh()).abs() < 1e-14);
        assert!((out.get(0, 1).re - 1f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn funcalc_rejects_non_hermitian() {
        let a = m(&[&[(0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]);
        assert!(matches!(funcalc_re(&a, |x| x), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn funcalc_domain_error_names_eigenvalue() {
        let h = Operator::from_real_diagonal(&[0.0, 4.0]);
        match funcalc_re(&h, |x| x.powf(-0.5)) {
            Err(Error::Domain { eigenvalue }) => assert_eq!(eigenvalue, 0.0),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn effect_classification() {
        assert_eq!(is_effect(&Operator::identity(3), 1e-10).unwrap(), EffectClass::Projection);
        assert_eq!(
            is_effect(&Operator::identity(3).scale_re(2.0), 1e-10).unwrap(),
            EffectClass::NotEffect
        );
        assert_eq!(
            is_effect(&Operator::identity(3).scale_re(0.5), 1e-10).unwrap(),
            EffectClass::Effect
        );
        assert!(is_effect(&Operator::zeros(2, 3), 1e-10).is_err());
    }

    #[test]
    fn hs_inner_examples() {
        let id = Operator::identity(5);
        assert!((hs_inner(&id, &id).unwrap() - c(5.0)).norm() < 1e-15);
        let a = m(&[&[(1.0, 0.0), (0.0, 1.0)], &[(0.0, 0.0), (2.0, 0.0)]]);
        // |1|² + |i|² + |2|² = 6
        assert!((hs_inner(&a, &a).unwrap() - c(6.0)).norm() < 1e-15);
        assert!(hs_inner(&a, &id).is_err());
    }

    #[test]
    fn spectrum_projections_are_projections() {
        let h = m(&[
            &[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)],
            &[(0.0, -1.0), (1.0, 0.0), (0.0, 0.0)],
            &[(0.0, 0.0), (0.0, 0.0), (2.0, 0.0)],
        ]);
        let s = HermitianSpectrum::new(&h, DEFAULT_TOL).unwrap();
        assert!(s.reconstruction_residual(&h) < 1e-14);
        assert!(s.unitarity_residual() < 1e-14);
        let groups = s.eigenspace_projections(1e-10);
        // eigenvalues 0, 2, 2
        assert_eq!(groups.len(), 2);
        for (_, p) in &groups {
            assert_eq!(is_effect(p, 1e-10).unwrap(), EffectClass::Projection);
        }
    }

    #[test]
    fn density_check() {
        let t = Operator::from_real_diagonal(&[0.25, 0.75]);
        assert!(require_density(&t, 1e-12).is_ok());
        let bad = Operator::from_real_diagonal(&[0.5, 0.75]);
        assert!(matches!(require_density(&bad, 1e-12), Err(Error::NotDensity(_))));
        let neg = Operator::from_real_diagonal(&[-0.25, 1.25]);
        assert!(matches!(require_density(&neg, 1e-12), Err(Error::NotDensity(_))));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let m = DMatrix::from_element(2, 2, C64::new(f64::NAN, 0.0));
        assert_eq!(Operator::from_matrix(m), Err(Error::NonFinite));
    }

    #[test]
    fn norms_of_rank_one_imaginary_outer_products() {
        // nalgebra's complex SVD misreports these; the norm must not
        for d in [8usize, 16, 32] {
            let v = DVector::from_fn(d, |k, _| c(if k % 2 == 0 { 1.0 } else { -1.0 }));
            let a = Operator::outer(&v, &v).scale(I);
            assert!((a.norm() - d as f64).abs() < 1e-12, "d = {d}");
            let s = a.singular_values();
            assert!((s[0] - d as f64).abs() < 1e-12 && s[1] < 1e-12, "{s:?}");
            let (top, u) = a.top_left_singular();
            assert!((top - d as f64).abs() < 1e-12);
            assert!((u.dotc(&v).norm() / v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_values_match_hermitian_dilation() {
        let mut rng = crate::random::rng(3);
        for (r, k) in [(5, 5), (7, 3), (2, 6)] {
            let a = crate::random::gaussian(&mut rng, r, k);
            let n = r + k;
            let dil = Operator::from_fn(n, n, |i, j| match (i < r, j < r) {
                (true, false) => a.get(i, j - r),
                (false, true) => a.get(j, i - r).conj(),
                _ => c(0.0),
            });
            let mut eig = HermitianSpectrum::new(&dil, 1e-12).unwrap().eigenvalues;
            eig.reverse();
            let s = a.singular_values();
            for (x, y) in s.iter().zip(&eig) {
                assert!((x - y).abs() < 1e-12, "{s:?} {eig:?}");
            }
            assert!((a.norm() - s[0]).abs() < 1e-12);
        }
        let tiny = Operator::identity(3).scale_re(1e-200);
        assert!((tiny.norm() / 1e-200 - 1.0).abs() < 1e-12, "{}", tiny.norm());
    }
}
