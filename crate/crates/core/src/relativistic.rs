//! Circular-grid model of the massless particle on the line.
//!
//! `L²(ℝ)` is replaced by functions on `n` points `x_j = j·h` of a circle of
//! circumference `L`. Frequencies are `ξ_k = 2πk/L`, `k ∈ [−n/2, n/2)`, and
//! spectral coefficients are stored in natural FFT order (`k ≥ 0` first, then
//! the negative modes). `D = −i d/dx` acts as the multiplier `ξ`, so
//! `e^{isD} f(x) = f(x + s)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::modular::TraceWeight;
use crate::operator::{c, Operator, C64};
use crate::povm::DiscretePovm;
use crate::region::{grid_index, Domain, RegionSet};

/// Band used to measure convergence of the interpolation path: the lowest
/// Hardy modes, which are resolved at every grid size of a sweep.
pub const INTERPOLATION_BAND: usize = 16;

#[derive(Clone)]
pub struct CircleGrid {
    n: usize,
    length: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for CircleGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CircleGrid {{ n: {}, length: {} }}", self.n, self.length)
    }
}

pub fn make_grid(n: usize, length: f64) -> Result<CircleGrid> {
    CircleGrid::new(n, length)
}

impl CircleGrid {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("grid size must be even and ≥ 8, got {n}")));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidArgument(format!("circumference must be positive, got {length}")));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            length,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn domain(&self) -> Domain {
        Domain::Line { length: self.length }
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    /// Signed mode number stored at spectral index `j`.
    pub fn mode(&self, j: usize) -> i64 {
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// `ξ` at spectral index `j`.
    pub fn frequency(&self, j: usize) -> f64 {
        2.0 * PI * self.mode(j) as f64 / self.length
    }

    /// Frequencies in ascending order, `k = −n/2 … n/2−1`.
    pub fn frequencies_sorted(&self) -> Vec<f64> {
        let n = self.n as i64;
        (-n / 2..n / 2).map(|k| 2.0 * PI * k as f64 / self.length).collect()
    }

    fn check_len(&self, g: &DVector<C64>) -> Result<()> {
        if g.len() == self.n {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("grid function of length {} on {} points", g.len(), self.n)))
        }
    }

    /// Unitary transform `f̂_k = n^{−1/2} Σ_j f_j e^{−iξ_k x_j}`.
    pub fn forward(&self, f: &DVector<C64>) -> Result<DVector<C64>> {
        self.check_len(f)?;
        let mut buf: Vec<C64> = f.iter().copied().collect();
        self.forward.process(&mut buf);
        let s = 1.0 / (self.n as f64).sqrt();
        Ok(DVector::from_iterator(self.n, buf.into_iter().map(|z| z * s)))
    }

    pub fn inverse(&self, fh: &DVector<C64>) -> Result<DVector<C64>> {
        self.check_len(fh)?;
        let mut buf: Vec<C64> = fh.iter().copied().collect();
        self.inverse.process(&mut buf);
        let s = 1.0 / (self.n as f64).sqrt();
        Ok(DVector::from_iterator(self.n, buf.into_iter().map(|z| z * s)))
    }

    /// Applies the Fourier multiplier with symbol `sym(ξ)`.
    pub fn multiplier(&self, g: &DVector<C64>, sym: impl Fn(f64) -> C64) -> Result<DVector<C64>> {
        let mut gh = self.forward(g)?;
        for (j, z) in gh.iter_mut().enumerate() {
            *z *= sym(self.frequency(j));
        }
        self.inverse(&gh)
    }

    /// The multiplier as an `n×n` matrix in the position basis (circulant).
    pub fn multiplier_matrix(&self, sym: impl Fn(f64) -> C64) -> Operator {
        let n = self.n;
        let symbols: Vec<C64> = (0..n).map(|j| sym(self.frequency(j))).collect();
        let mut col = symbols.clone();
        self.inverse.process(&mut col);
        let col: Vec<C64> = col.into_iter().map(|z| z / n as f64).collect();
        Operator::from_fn(n, n, |r, s| col[(r + n - s) % n])
    }

    /// Circular convolution `(f*g)_j = h Σ_l f_l g_{j−l}`.
    pub fn convolve(&self, f: &DVector<C64>, g: &DVector<C64>) -> Result<DVector<C64>> {
        self.check_len(f)?;
        self.check_len(g)?;
        let n = self.n;
        let h = self.spacing();
        Ok(DVector::from_fn(n, |j, _| {
            (0..n).map(|l| f[l] * g[(j + n - l) % n]).sum::<C64>() * h
        }))
    }

    /// Constant `κ` in `(f*g)^ = κ f̂ ĝ`; the continuum value is `√(2π)`.
    pub fn convolution_constant(&self) -> f64 {
        self.spacing() * (self.n as f64).sqrt()
    }

    /// `‖(f*g)^ − κ f̂ ĝ‖`.
    pub fn convolution_residual(&self, f: &DVector<C64>, g: &DVector<C64>) -> Result<f64> {
        let lhs = self.forward(&self.convolve(f, g)?)?;
        let (fh, gh) = (self.forward(f)?, self.forward(g)?);
        let k = self.convolution_constant();
        Ok((lhs - fh.component_mul(&gh) * c(k)).norm())
    }
}

/// `1_{[0,∞)}(D) g`; the zero mode is kept.
pub fn hardy_project(grid: &CircleGrid, g: &DVector<C64>) -> Result<DVector<C64>> {
    grid.multiplier(g, |xi| c(if xi >= 0.0 { 1.0 } else { 0.0 }))
}

/// `P(y) g`, the multiplier `e^{−y|ξ|}`.
pub fn poisson_apply(grid: &CircleGrid, y: f64, g: &DVector<C64>) -> Result<DVector<C64>> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::InvalidArgument(format!("Poisson parameter must be ≥ 0, got {y}")));
    }
    if y == 0.0 {
        grid.check_len(g)?;
        return Ok(g.clone());
    }
    grid.multiplier(g, |xi| c((-y * xi.abs()).exp()))
}

/// Discrete Poisson kernel at `x = 0`: `P(y)` applied to the grid delta
/// `e_0/h`, read at the origin. Tends to `1/(πy)`.
pub fn poisson_kernel_at_origin(n: usize, length: f64, y: f64) -> Result<f64> {
    let grid = CircleGrid::new(n, length)?;
    let mut delta = DVector::zeros(n);
    delta[0] = c(1.0 / grid.spacing());
    Ok(poisson_apply(&grid, y, &delta)?[0].re)
}

/// Nonnegative-frequency subspace of a [`CircleGrid`].
#[derive(Clone, Debug)]
pub struct HardyModel {
    grid: CircleGrid,
    /// `n × n/2` isometry with columns `e^{iξ_k x_j}/√n`, `k = 0 … n/2−1`.
    basis: Operator,
}

impl HardyModel {
    pub fn new(grid: CircleGrid) -> Self {
        let n = grid.n();
        let s = 1.0 / (n as f64).sqrt();
        let basis = Operator::from_fn(n, n / 2, |j, k| {
            C64::from_polar(s, 2.0 * PI * (j * k % n) as f64 / n as f64)
        });
        Self { grid, basis }
    }

    pub fn grid(&self) -> &CircleGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.n() / 2
    }

    pub fn basis(&self) -> &Operator {
        &self.basis
    }

    /// `P₊` as an `n×n` matrix.
    pub fn projection_matrix(&self) -> Operator {
        self.grid.multiplier_matrix(|xi| c(if xi >= 0.0 { 1.0 } else { 0.0 }))
    }

    /// Hardy frequencies `ξ_k = 2πk/L`, `k = 0 … n/2−1`.
    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.grid.frequency(k)).collect()
    }

    /// `V₊* diag(w) V₊` for per-site weights `w`.
    pub fn compress_weights(&self, w: &[f64]) -> Operator {
        let n = self.grid.n();
        let m = self.dim();
        // (V*WV)_{kl} = (1/n) Σ_j w_j e^{i(l−k)x_j·2π/L}: depends on l − k only
        let lags: Vec<C64> = (0..2 * m - 1)
            .map(|q| {
                let lag = q as i64 - (m as i64 - 1);
                w.iter()
                    .enumerate()
                    .filter(|(_, &wj)| wj != 0.0)
                    .map(|(j, &wj)| {
                        let phase = 2.0 * PI * (lag * j as i64).rem_euclid(n as i64) as f64 / n as f64;
                        C64::from_polar(wj, phase)
                    })
                    .sum::<C64>()
                    / n as f64
            })
            .collect();
        Operator::from_fn(m, m, |k, l| lags[l + m - 1 - k])
    }

    /// `e^{is|D|}` on the Hardy subspace (diagonal).
    pub fn modular_unitary(&self, s: f64) -> Operator {
        Operator::from_diagonal(
            &self.frequencies().iter().map(|xi| C64::from_polar(1.0, s * xi)).collect::<Vec<_>>(),
        )
    }
}

fn aligned_weights(grid: &CircleGrid, b: &RegionSet) -> Result<Vec<f64>> {
    if b.domain() != grid.domain() {
        return Err(Error::InvalidArgument("region is not on this grid's circle".into()));
    }
    let mut w = vec![0.0; grid.n()];
    for j in b.aligned_cells(grid.n())? {
        w[j] = 1.0;
    }
    Ok(w)
}

/// `E_B = P₊ 1_B(X) P₊` in the Hardy basis, for `B` a union of grid cells.
pub fn rel_effect(model: &HardyModel, b: &RegionSet) -> Result<Operator> {
    Ok(model.compress_weights(&aligned_weights(model.grid(), b)?))
}

/// Effects of `cells` equal aligned blocks of the circle.
pub fn rel_povm(model: &HardyModel, cells: usize) -> Result<DiscretePovm> {
    let partition = RegionSet::equal_partition(model.grid().domain(), cells)?;
    let effects = partition.iter().map(|r| rel_effect(model, r)).collect::<Result<Vec<_>>>()?;
    DiscretePovm::new(partition, effects)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CovariancePath {
    /// `βt` and `B` are grid-aligned; the identity is exact.
    Exact,
    /// `B + βt` is represented by fractional cell coverage.
    Interpolated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceReport {
    pub path: CovariancePath,
    /// `‖e^{−iβt|D|} E_B e^{iβt|D|} − E_{B+βt}‖` on the Hardy subspace.
    pub full: f64,
    /// Same residual restricted to the lowest [`INTERPOLATION_BAND`] modes.
    pub band: f64,
}

impl CovarianceReport {
    pub fn residual(&self) -> f64 {
        match self.path {
            CovariancePath::Exact => self.full,
            CovariancePath::Interpolated => self.band,
        }
    }
}

/// Covariance of `E_B` under the modular time `T^{it} = e^{−iβt|D|}`.
pub fn rel_covariance_residual(
    model: &HardyModel,
    beta: f64,
    t: f64,
    b: &RegionSet,
) -> Result<CovarianceReport> {
    let grid = model.grid();
    let s = beta * t;
    let e = rel_effect(model, b)?;
    let u = model.modular_unitary(s);
    let lhs = if s == 0.0 { e.clone() } else { &(&u.adjoint() * &e) * &u };
    let shifted = b.translate(s);
    let aligned = grid_index(s.rem_euclid(grid.length()), grid.spacing()).is_some()
        || grid_index(grid.length() - s.rem_euclid(grid.length()), grid.spacing()).is_some();
    let (path, rhs) = if aligned {
        (CovariancePath::Exact, rel_effect(model, &shifted)?)
    } else {
        (CovariancePath::Interpolated, model.compress_weights(&shifted.coverage(grid.n())))
    };
    let diff = &lhs - &rhs;
    let k = INTERPOLATION_BAND.min(model.dim());
    let band = Operator::from_fn(k, k, |i, j| diff.get(i, j)).norm();
    Ok(CovarianceReport { path, full: diff.norm(), band })
}

/// `|⟨U_tA, U_tB⟩_τ − ⟨A, B⟩_τ|` for `U_tA = e^{it|D|}Ae^{−it|D|}` and
/// `τ(A) = tr(Ae^{−β|D|})`. `A` and `B` act on the whole grid (`n×n`) or on
/// the Hardy subspace (`n/2 × n/2`).
pub fn tau_unitarity_residual(
    model: &HardyModel,
    beta: f64,
    t: f64,
    a: &Operator,
    b: &Operator,
) -> Result<f64> {
    let n = model.grid().n();
    let m = model.dim();
    let (weight, u) = if a.shape() == (n, n) {
        let g = model.grid();
        (
            g.multiplier_matrix(|xi| c((-beta * xi.abs()).exp())),
            g.multiplier_matrix(|xi| C64::from_polar(1.0, t * xi.abs())),
        )
    } else if a.shape() == (m, m) {
        let f = model.frequencies();
        (
            Operator::from_real_diagonal(&f.iter().map(|xi| (-beta * xi).exp()).collect::<Vec<_>>()),
            model.modular_unitary(t),
        )
    } else {
        return Err(Error::ShapeMismatch(format!("operator must be {n}x{n} or {m}x{m}")));
    };
    a.require_same_shape(b)?;
    let tau = TraceWeight::new(weight)?;
    let ut = |x: &Operator| -> Operator { &(&u * x) * &u.adjoint() };
    let lhs = tau.inner(&ut(a), &ut(b))?;
    Ok((lhs - tau.inner(a, b)?).norm())
}

/// `‖(e^{it|D|} − e^{itD})P₊‖` as `n×n` matrices.
pub fn hardy_generator_residual(model: &HardyModel, t: f64) -> f64 {
    let g = model.grid();
    let abs = g.multiplier_matrix(|xi| C64::from_polar(1.0, t * xi.abs()));
    let lin = g.multiplier_matrix(|xi| C64::from_polar(1.0, t * xi));
    let p = model.projection_matrix();
    (&(&abs - &lin) * &p).norm()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    /// `(y, ‖P(y)f‖)` for ascending `y`.
    pub norms: Vec<(f64, f64)>,
    /// Number of increases of `‖P(y)f‖` along ascending `y`.
    pub monotonicity_violations: usize,
    /// The largest norm is attained at the smallest `y`.
    pub sup_at_smallest: bool,
    /// `(y, ‖P(y)f − f‖)`.
    pub approach: Vec<(f64, f64)>,
    /// `|‖P(0)f‖ − ‖f‖|`.
    pub boundary_residual: f64,
}

pub fn boundary_isometry_check(grid: &CircleGrid, f: &DVector<C64>, ys: &[f64]) -> Result<BoundaryReport> {
    let fnorm = f.norm();
    let off = (hardy_project(grid, f)? - f).norm();
    if off > 1e-10 * fnorm.max(1.0) {
        return Err(Error::InvalidArgument(format!("not a Hardy function (residual {off:.3e})")));
    }
    let mut ys: Vec<f64> = ys.to_vec();
    ys.sort_by(f64::total_cmp);
    let mut norms = Vec::with_capacity(ys.len());
    let mut approach = Vec::with_capacity(ys.len());
    for &y in &ys {
        let py = poisson_apply(grid, y, f)?;
        norms.push((y, py.norm()));
        approach.push((y, (py - f).norm()));
    }
    let slack = 1e-14 * fnorm;
    let monotonicity_violations = norms.windows(2).filter(|w| w[1].1 > w[0].1 + slack).count();
    let sup_at_smallest = norms
        .first()
        .is_none_or(|first| norms.iter().all(|p| p.1 <= first.1 + slack));
    let boundary_residual = (poisson_apply(grid, 0.0, f)?.norm() - fnorm).abs();
    Ok(BoundaryReport { norms, monotonicity_violations, sup_at_smallest, approach, boundary_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{is_effect, EffectClass, HermitianSpectrum};
    use crate::povm::povm_validate;
    use crate::random;

    fn random_fn(rng: &mut random::SeededRng, n: usize) -> DVector<C64> {
        random::gaussian(rng, n, 1).column(0)
    }

    fn mode(grid: &CircleGrid, k: i64) -> DVector<C64> {
        let n = grid.n();
        DVector::from_fn(n, |j, _| {
            C64::from_polar(1.0, 2.0 * PI * (k * j as i64) as f64 / n as f64)
        })
    }

    #[test]
    fn grid_definitions() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let xs = g.frequencies_sorted();
        assert_eq!(xs.len(), 8);
        for (i, xi) in xs.iter().enumerate() {
            assert!((xi - (i as f64 - 4.0)).abs() < 1e-15);
        }
        assert!((g.spacing() - PI / 4.0).abs() < 1e-16);
        assert!(make_grid(7, 1.0).is_err() && make_grid(4, 1.0).is_err());
        assert!(make_grid(8, 0.0).is_err());
    }

    #[test]
    fn parseval_and_round_trip() {
        let g = make_grid(64, 5.0).unwrap();
        let mut rng = random::rng(1);
        let f = random_fn(&mut rng, 64);
        let fh = g.forward(&f).unwrap();
        assert!((f.norm() - fh.norm()).abs() <= 1e-13);
        assert!((g.inverse(&fh).unwrap() - &f).norm() <= 1e-13);
        // a pure mode lands on its spectral index
        let e3 = g.forward(&mode(&g, 3)).unwrap();
        assert!((e3[3] - c(8.0)).norm() < 1e-12);
    }

    #[test]
    fn convolution_theorem() {
        let g = make_grid(32, 3.0).unwrap();
        let mut rng = random::rng(2);
        let (f, h) = (random_fn(&mut rng, 32), random_fn(&mut rng, 32));
        assert!(g.convolution_residual(&f, &h).unwrap() <= 1e-12);
    }

    #[test]
    fn shift_direction() {
        let g = make_grid(16, 4.0).unwrap();
        let mut rng = random::rng(3);
        let f = random_fn(&mut rng, 16);
        let s = 3.0 * g.spacing();
        let shifted = g.multiplier(&f, |xi| C64::from_polar(1.0, s * xi)).unwrap();
        for j in 0..16 {
            assert!((shifted[j] - f[(j + 3) % 16]).norm() < 1e-13);
        }
    }

    #[test]
    fn hardy_projection() {
        let g = make_grid(64, 10.0).unwrap();
        let pos = &mode(&g, 5) + &mode(&g, 0);
        assert!((hardy_project(&g, &pos).unwrap() - &pos).norm() < 1e-12);
        assert!(hardy_project(&g, &mode(&g, -3)).unwrap().norm() < 1e-12);
        let model = HardyModel::new(g);
        let p = model.projection_matrix();
        assert!((&(&p * &p) - &p).norm() <= 1e-12);
        assert!(p.hermitian_defect().unwrap() <= 1e-12);
        let v = model.basis();
        assert!((&v.adjoint() * v).distance(&Operator::identity(32)).unwrap() <= 1e-12);
        assert!((v * &v.adjoint()).distance(&p).unwrap() <= 1e-12);
        assert!(hardy_generator_residual(&model, 0.7) <= 1e-12);
    }

    #[test]
    fn poisson_semigroup() {
        let g = make_grid(64, 6.0).unwrap();
        let mut rng = random::rng(4);
        let f = random_fn(&mut rng, 64);
        assert_eq!(poisson_apply(&g, 0.0, &f).unwrap(), f);
        let two = poisson_apply(&g, 0.3, &poisson_apply(&g, 0.5, &f).unwrap()).unwrap();
        let one = poisson_apply(&g, 0.8, &f).unwrap();
        assert!((two - one).norm() <= 1e-13);
        let k = 4;
        let out = poisson_apply(&g, 0.2, &mode(&g, k)).unwrap();
        let want = mode(&g, k) * c((-0.2 * g.frequency(k as usize)).exp());
        assert!((out - want).norm() <= 1e-12);
        assert!(poisson_apply(&g, -0.1, &f).is_err());
    }

    #[test]
    fn poisson_kernel_converges() {
        let errs: Vec<f64> = [(128, 8.0), (256, 16.0), (512, 32.0), (1024, 64.0)]
            .iter()
            .map(|&(n, l)| (poisson_kernel_at_origin(n, l * PI, 1.0).unwrap() - 1.0 / PI).abs())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        assert!((errs[0] - 1.656e-3).abs() < 1e-5, "{errs:?}");
    }

    #[test]
    fn boundary_isometry() {
        let g = make_grid(64, 8.0).unwrap();
        let single = mode(&g, 3);
        let r = boundary_isometry_check(&g, &single, &[0.5]).unwrap();
        let want = (-0.5 * g.frequency(3)).exp() * single.norm();
        assert!((r.norms[0].1 - want).abs() < 1e-12);
        let mut rng = random::rng(5);
        let f = hardy_project(&g, &random_fn(&mut rng, 64)).unwrap();
        let ys: Vec<f64> = (0..20).map(|i| 10f64.powf(-3.0 + 4.0 * i as f64 / 19.0)).collect();
        let r = boundary_isometry_check(&g, &f, &ys).unwrap();
        assert_eq!(r.monotonicity_violations, 0);
        assert!(r.sup_at_smallest && r.boundary_residual <= 1e-14);
        assert!(r.approach.windows(2).all(|w| w[0].1 <= w[1].1));
        assert!(boundary_isometry_check(&g, &mode(&g, -2), &ys).is_err());
    }

    #[test]
    fn effects_and_povm() {
        let model = HardyModel::new(make_grid(64, 8.0).unwrap());
        let d = model.grid().domain();
        let full = rel_effect(&model, &RegionSet::full(d)).unwrap();
        assert!(full.distance(&Operator::identity(32)).unwrap() <= 1e-12);
        let half = rel_effect(&model, &RegionSet::interval(d, 0.0, 4.0).unwrap()).unwrap();
        let s = HermitianSpectrum::new(&half, 1e-12).unwrap();
        assert!(s.min() >= -1e-12 && s.max() <= 1.0 + 1e-12);
        assert_eq!(is_effect(&half, 1e-10).unwrap(), EffectClass::Effect);
        let p = rel_povm(&model, 4).unwrap();
        let r = povm_validate(&p, 1e-12).unwrap();
        assert!(r.pass, "{r:?}");
        let off = RegionSet::interval(d, 0.01, 4.0).unwrap();
        assert!(matches!(rel_effect(&model, &off), Err(Error::Misaligned(_))));
    }

    #[test]
    fn covariance_exact_and_interpolated() {
        let model = HardyModel::new(make_grid(256, 8.0 * PI).unwrap());
        let h = model.grid().spacing();
        let b = RegionSet::interval(model.grid().domain(), 0.0, 2.0 * PI).unwrap();
        let r0 = rel_covariance_residual(&model, 1.0, 0.0, &b).unwrap();
        assert_eq!((r0.path, r0.full), (CovariancePath::Exact, 0.0));
        let r = rel_covariance_residual(&model, 1.0, 8.0 * h, &b).unwrap();
        assert_eq!(r.path, CovariancePath::Exact);
        assert!(r.full <= 1e-12, "{r:?}");
        // negative shifts and β scaling
        let r = rel_covariance_residual(&model, 2.0, -3.0 * h, &b).unwrap();
        assert!(r.path == CovariancePath::Exact && r.full <= 1e-12, "{r:?}");
        let r = rel_covariance_residual(&model, 1.0, 2.5 * h, &b).unwrap();
        assert_eq!(r.path, CovariancePath::Interpolated);
        assert!(r.band > 1e-6 && r.band < 1e-2, "{r:?}");
    }

    #[test]
    fn tau_unitarity() {
        let model = HardyModel::new(make_grid(64, 8.0).unwrap());
        let mut rng = random::rng(7);
        let a = random::gaussian(&mut rng, 64, 64);
        let b = random::gaussian(&mut rng, 64, 64);
        let a = a.scale_re(1.0 / a.frobenius_norm());
        let b = b.scale_re(1.0 / b.frobenius_norm());
        assert!(tau_unitarity_residual(&model, 1.0, 0.0, &a, &b).unwrap() <= 1e-14);
        assert!(tau_unitarity_residual(&model, 0.0, 0.7, &a, &b).unwrap() <= 1e-12);
        assert!(tau_unitarity_residual(&model, 1.0, 0.7, &a, &b).unwrap() <= 1e-12);
        let ah = random::gaussian(&mut rng, 32, 32);
        assert!(tau_unitarity_residual(&model, 1.0, 0.7, &ah, &ah).unwrap() <= 1e-10);
    }
}
