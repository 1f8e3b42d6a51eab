//! Log-frequency lattice model of the dilation group and its Weyl calculus.
//!
//! Sites `u_j = u_min + jδ`, `j = 0..m−1`, sit on a circle of circumference
//! `mδ`; each of the two frequency-sign channels carries one copy. `P` is
//! multiplication by `u`, and the dilation group `S(t) = e^{itQ}` acts as the
//! translation `φ(u) ↦ φ(u + t)`, a circular shift when `t ∈ δℤ`. The spectrum
//! of `Q` is the dual grid `q_l = l·Δq`, `Δq = 2π/(mδ)`, read on a circle of
//! circumference `L_x = 2π/δ`; regions of the `Q` (position) variable live on
//! that circle, cell `c` covering `[cΔq, (c+1)Δq)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::operator::{c, Operator, C64};
use crate::povm::DiscretePovm;
use crate::region::{signed_grid_index, Domain, RegionSet};
use crate::relativistic::CovariancePath;

#[derive(Clone, Debug, PartialEq)]
pub struct MellinLattice {
    m: usize,
    delta: f64,
    u_min: f64,
}

pub fn make_lattice(m: usize, delta: f64, u_min: f64) -> Result<MellinLattice> {
    MellinLattice::new(m, delta, u_min)
}

fn misaligned(what: &str, x: f64, h: f64) -> Error {
    Error::Misaligned(format!("{what} {x} is not a multiple of {h}"))
}

impl MellinLattice {
    pub fn new(m: usize, delta: f64, u_min: f64) -> Result<Self> {
        if m < 8 || !m.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("lattice size must be even and ≥ 8, got {m}")));
        }
        if !delta.is_finite() || delta <= 0.0 {
            return Err(Error::InvalidArgument(format!("spacing must be positive, got {delta}")));
        }
        let k = signed_grid_index(u_min, delta).ok_or_else(|| misaligned("u_min", u_min, delta))?;
        Ok(Self { m, delta, u_min: k as f64 * delta })
    }

    /// Lattice with `δ = Δq = √(2π/m)`, so that shifts and modulations live on
    /// the same grid; `u_min = offset·δ`.
    pub fn self_dual(m: usize, offset: i64) -> Result<Self> {
        let delta = (2.0 * PI / m as f64).sqrt();
        Self::new(m, delta, offset as f64 * delta)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn u_min(&self) -> f64 {
        self.u_min
    }

    pub fn u(&self, j: usize) -> f64 {
        self.u_min + j as f64 * self.delta
    }

    pub fn sites(&self) -> Vec<f64> {
        (0..self.m).map(|j| self.u(j)).collect()
    }

    /// `Δq = 2π/(mδ)`.
    pub fn dual_spacing(&self) -> f64 {
        2.0 * PI / (self.m as f64 * self.delta)
    }

    /// Circumference `L_x = 2π/δ` of the `Q` circle.
    pub fn x_length(&self) -> f64 {
        2.0 * PI / self.delta
    }

    pub fn x_domain(&self) -> Domain {
        Domain::Line { length: self.x_length() }
    }

    /// `Q` eigenvalue of dual cell `c`, in `[−m/2, m/2)·Δq`.
    pub fn q(&self, cell: usize) -> f64 {
        let l = if cell < self.m / 2 { cell as i64 } else { cell as i64 - self.m as i64 };
        l as f64 * self.dual_spacing()
    }

    /// Two-channel lift `X ⊕ X`.
    pub fn both_channels(&self, x: &Operator) -> Operator {
        x.direct_sum(x)
    }

    /// `P = diag(u_j)` on one channel.
    pub fn p_channel(&self) -> Operator {
        Operator::from_real_diagonal(&self.sites())
    }

    /// `e^{isP}` on one channel.
    pub fn exp_p_channel(&self, s: f64) -> Operator {
        Operator::from_diagonal(&self.sites().iter().map(|u| C64::from_polar(1.0, s * u)).collect::<Vec<_>>())
    }

    pub fn exp_p(&self, s: f64) -> Operator {
        self.both_channels(&self.exp_p_channel(s))
    }

    /// Circular shift `(S(kδ)φ)_j = φ_{j+k}` on one channel.
    pub fn shift_steps(&self, k: i64) -> Operator {
        let m = self.m as i64;
        Operator::from_fn(self.m, self.m, |j, l| {
            c(if (j as i64 + k).rem_euclid(m) == l as i64 { 1.0 } else { 0.0 })
        })
    }

    /// `S(t) = e^{itQ}` on one channel: an exact shift for `t ∈ δℤ`, the
    /// spectral multiplier `e^{itq_l}` otherwise.
    pub fn shift_channel(&self, t: f64) -> Operator {
        if let Some(k) = signed_grid_index(t, self.delta) {
            return self.shift_steps(k);
        }
        let m = self.m;
        // (1/m) Σ_l e^{itq_l} e^{iq_l(u_j − u_k)} depends on j − k only
        let col: Vec<C64> = (0..m)
            .map(|diff| {
                (0..m)
                    .map(|cell| {
                        let q = self.q(cell);
                        C64::from_polar(1.0, t * q + q * diff as f64 * self.delta)
                    })
                    .sum::<C64>()
                    / m as f64
            })
            .collect();
        Operator::from_fn(m, m, |j, k| col[(j + m - k) % m])
    }

    pub fn shift(&self, t: f64) -> Operator {
        self.both_channels(&self.shift_channel(t))
    }

    /// Dual cells covered by an aligned region of the `Q` circle.
    fn cells_of(&self, b: &RegionSet) -> Result<Vec<usize>> {
        if b.domain() != self.x_domain() {
            return Err(Error::InvalidArgument("region is not on this lattice's Q circle".into()));
        }
        b.aligned_cells(self.m)
    }

    /// `Σ_c w_c |ψ_c⟩⟨ψ_c|` for the `Q` eigenvectors `ψ_c(u_j) ∝ e^{iq_c u_j}`.
    fn q_multiplier_channel(&self, weights: &[f64]) -> Operator {
        let m = self.m;
        let col: Vec<C64> = (0..m)
            .map(|diff| {
                weights
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| w != 0.0)
                    .map(|(cell, &w)| C64::from_polar(w, 2.0 * PI * (cell * diff % m) as f64 / m as f64))
                    .sum::<C64>()
                    / m as f64
            })
            .collect();
        Operator::from_fn(m, m, |j, k| col[(j + m - k) % m])
    }

    /// `1_B(Q)` on one channel, for `B` aligned to the dual cells.
    pub fn q_indicator_channel(&self, b: &RegionSet) -> Result<Operator> {
        let mut w = vec![0.0; self.m];
        for cell in self.cells_of(b)? {
            w[cell] = 1.0;
        }
        Ok(self.q_multiplier_channel(&w))
    }

    pub fn q_indicator(&self, b: &RegionSet) -> Result<Operator> {
        Ok(self.both_channels(&self.q_indicator_channel(b)?))
    }

    /// Sites with `u_j ≥ 0`, the range of `1_{ℝ₊}(P)` on one channel.
    pub fn positive_sites(&self) -> Vec<usize> {
        (0..self.m).filter(|&j| self.u(j) >= -1e-12 * self.delta).collect()
    }

    /// Dimension of the range of `1_{ℝ₊}(P)` over both channels.
    pub fn positive_dim(&self) -> usize {
        2 * self.positive_sites().len()
    }

    fn compress_positive(&self, x: &Operator) -> Operator {
        let r = self.positive_sites();
        self.both_channels(&Operator::from_fn(r.len(), r.len(), |a, b| x.get(r[a], r[b])))
    }
}

/// `‖e^{isP}S(t) − e^{−ist}S(t)e^{isP}‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylReport {
    pub residual: f64,
    /// `t ∈ δℤ` and `s` on the dual grid: the relation is exact.
    pub exact_path: bool,
    /// For `t ∈ δℤ`, the wrap-around defect `|1 − e^{−ismδ}|` predicted at
    /// the sites whose shift crosses the seam.
    pub predicted_wrap: Option<f64>,
}

pub fn weyl_relation_residual(lat: &MellinLattice, s: f64, t: f64) -> WeylReport {
    let ep = lat.exp_p(s);
    let st = lat.shift(t);
    let lhs = &ep * &st;
    let rhs = (&st * &ep).scale(C64::from_polar(1.0, -s * t));
    let t_aligned = signed_grid_index(t, lat.delta()).is_some();
    let s_aligned = signed_grid_index(s, lat.dual_spacing()).is_some();
    let wraps = signed_grid_index(t, lat.delta())
        .is_some_and(|k| k.rem_euclid(lat.m() as i64) != 0);
    let predicted_wrap = t_aligned.then(|| {
        if wraps {
            (c(1.0) - C64::from_polar(1.0, -s * lat.m() as f64 * lat.delta())).norm()
        } else {
            0.0
        }
    });
    WeylReport { residual: (&lhs - &rhs).norm(), exact_path: t_aligned && s_aligned, predicted_wrap }
}

/// One plane wave `coeff · e^{i(u·x + v·ξ)}` of a symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolTerm {
    /// Frequency in `x`, a multiple of `δ`.
    pub x_freq: f64,
    /// Frequency in `ξ`, a multiple of `Δq`.
    pub xi_freq: f64,
    pub coeff: C64,
}

/// Samples of the principal symbol `a₀(x, ±1)` on a periodic `x` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalSymbol {
    pub x_length: f64,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl PrincipalSymbol {
    pub fn from_fn(x_length: f64, n: usize, plus: impl Fn(f64) -> f64, minus: impl Fn(f64) -> f64) -> Self {
        let h = x_length / n as f64;
        Self {
            x_length,
            plus: (0..n).map(|j| plus(j as f64 * h)).collect(),
            minus: (0..n).map(|j| minus(j as f64 * h)).collect(),
        }
    }

    pub fn spacing(&self) -> f64 {
        self.x_length / self.plus.len() as f64
    }

    /// Samples of `a₀(x − t, ·)`; `t` must be a multiple of the spacing.
    pub fn translated(&self, t: f64) -> Result<Self> {
        let h = self.spacing();
        let k = signed_grid_index(t, h).ok_or_else(|| misaligned("translation", t, h))?;
        let n = self.plus.len() as i64;
        let roll = |v: &[f64]| -> Vec<f64> { (0..n).map(|j| v[(j - k).rem_euclid(n) as usize]).collect() };
        Ok(Self { x_length: self.x_length, plus: roll(&self.plus), minus: roll(&self.minus) })
    }
}

/// Band-limited symbol with an optional principal part.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolRep {
    pub terms: Vec<SymbolTerm>,
    pub principal: Option<PrincipalSymbol>,
}

impl SymbolRep {
    pub fn new(terms: Vec<SymbolTerm>) -> Self {
        Self { terms, principal: None }
    }

    pub fn with_principal(mut self, p: PrincipalSymbol) -> Self {
        self.principal = Some(p);
        self
    }

    /// `a_t(x, ξ) = a(x − t, ξ)`: coefficients pick up `e^{−itu}`.
    pub fn translated(&self, t: f64) -> Result<Self> {
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|term| SymbolTerm { coeff: term.coeff * C64::from_polar(1.0, -t * term.x_freq), ..*term })
                .collect(),
            principal: self.principal.as_ref().map(|p| p.translated(t)).transpose()?,
        })
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            terms: self.terms.iter().map(|term| SymbolTerm { coeff: term.coeff * s, ..*term }).collect(),
            principal: self.principal.as_ref().map(|p| PrincipalSymbol {
                x_length: p.x_length,
                plus: p.plus.iter().map(|x| x * s).collect(),
                minus: p.minus.iter().map(|x| x * s).collect(),
            }),
        }
    }

    /// Real-valued iff the coefficient of `(−u, −v)` is the conjugate of
    /// that of `(u, v)`.
    pub fn is_real(&self, tol: f64) -> bool {
        let total = |u: f64, v: f64| -> C64 {
            self.terms
                .iter()
                .filter(|t| (t.x_freq - u).abs() <= 1e-12 && (t.xi_freq - v).abs() <= 1e-12)
                .map(|t| t.coeff)
                .sum()
        };
        self.terms
            .iter()
            .all(|t| (total(t.x_freq, t.xi_freq) - total(-t.x_freq, -t.xi_freq).conj()).norm() <= tol)
    }

    fn principal(&self) -> Result<&PrincipalSymbol> {
        self.principal
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("symbol has no principal part".into()))
    }
}

/// Weyl quantization `Σ â e^{−iuv/2} e^{iuQ} e^{ivP}`, block-diagonal over
/// the two channels.
pub fn quantize(lat: &MellinLattice, a: &SymbolRep) -> Result<Operator> {
    let m = lat.m();
    let mut acc = Operator::zeros(m, m);
    for term in &a.terms {
        let k = signed_grid_index(term.x_freq, lat.delta())
            .ok_or_else(|| misaligned("x frequency", term.x_freq, lat.delta()))?;
        signed_grid_index(term.xi_freq, lat.dual_spacing())
            .ok_or_else(|| misaligned("ξ frequency", term.xi_freq, lat.dual_spacing()))?;
        let (u, v) = (term.x_freq, term.xi_freq);
        let front = term.coeff * C64::from_polar(1.0, -u * v / 2.0);
        let mods: Vec<C64> = lat.sites().iter().map(|x| C64::from_polar(1.0, v * x)).collect();
        let mm = m as i64;
        acc = &acc
            + &Operator::from_fn(m, m, |j, l| {
                if (j as i64 + k).rem_euclid(mm) == l as i64 {
                    front * mods[l]
                } else {
                    C64::new(0.0, 0.0)
                }
            });
    }
    Ok(lat.both_channels(&acc))
}

/// `τ(a) = ½∫(a₀(x,1) + a₀(x,−1)) dx` by the rectangle rule.
pub fn nc_integral(a: &SymbolRep) -> Result<f64> {
    let p = a.principal()?;
    let h = p.spacing();
    Ok(0.5 * h * p.plus.iter().zip(&p.minus).map(|(x, y)| x + y).sum::<f64>())
}

/// `(½∫(a₀(x,1)² + a₀(x,−1)²) dx)^{1/2}`.
pub fn htau_norm(a: &SymbolRep) -> Result<f64> {
    let p = a.principal()?;
    let h = p.spacing();
    Ok((0.5 * h * p.plus.iter().zip(&p.minus).map(|(x, y)| x * x + y * y).sum::<f64>()).sqrt())
}

/// `E_B = 1_{ℝ₊}(P) 1_B(Q) 1_{ℝ₊}(P)` on the range of `1_{ℝ₊}(P)`.
pub fn nc_effect(lat: &MellinLattice, b: &RegionSet) -> Result<Operator> {
    Ok(lat.compress_positive(&lat.q_indicator_channel(b)?))
}

pub fn nc_povm(lat: &MellinLattice, cells: usize) -> Result<DiscretePovm> {
    let partition = RegionSet::equal_partition(lat.x_domain(), cells)?;
    let effects = partition.iter().map(|r| nc_effect(lat, r)).collect::<Result<Vec<_>>>()?;
    DiscretePovm::new(partition, effects)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NcCovarianceReport {
    pub path: CovariancePath,
    /// `‖e^{itP} E_B e^{−itP} − E_{B+t}‖`.
    pub residual: f64,
}

/// Covariance of `E_B` under `|D|^{it} = e^{itP}`. Shifts off the dual grid
/// are compared against a fractional-coverage `E_{B+t}`.
pub fn nc_covariance_residual(lat: &MellinLattice, t: f64, b: &RegionSet) -> Result<NcCovarianceReport> {
    let e = nc_effect(lat, b)?;
    let r = lat.positive_sites();
    let phases: Vec<C64> = r.iter().map(|&j| C64::from_polar(1.0, t * lat.u(j))).collect();
    let k = phases.len();
    let lhs = Operator::from_fn(2 * k, 2 * k, |a, bb| phases[a % k] * e.get(a, bb) * phases[bb % k].conj());
    let shifted = b.translate(t);
    let (path, rhs) = match signed_grid_index(t, lat.dual_spacing()) {
        Some(_) => (CovariancePath::Exact, nc_effect(lat, &shifted)?),
        None => (
            CovariancePath::Interpolated,
            lat.compress_positive(&lat.q_multiplier_channel(&shifted.coverage(lat.m()))),
        ),
    };
    Ok(NcCovarianceReport { path, residual: lhs.distance(&rhs)? })
}

/// `‖e^{itP} a(Q,P) e^{−itP} − a_t(Q,P)‖` with `a_t(x, ξ) = a(x − t, ξ)`.
/// Exact for `t` on the dual grid, where `e^{itP}` commutes with the wrap.
pub fn conjugation_residual(lat: &MellinLattice, t: f64, a: &SymbolRep) -> Result<f64> {
    signed_grid_index(t, lat.dual_spacing()).ok_or_else(|| misaligned("time", t, lat.dual_spacing()))?;
    let op = quantize(lat, a)?;
    let u = lat.exp_p(t);
    let lhs = &(&u * &op) * &u.adjoint();
    let terms_only = SymbolRep::new(a.terms.clone());
    lhs.distance(&quantize(lat, &terms_only.translated(t)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{is_effect, EffectClass, HermitianSpectrum};
    use crate::povm::povm_validate;
    use crate::random;
    use rand::Rng;

    fn random_symbol(lat: &MellinLattice, seed: u64) -> SymbolRep {
        let mut rng = random::rng(seed);
        let mut terms = Vec::new();
        for j in -2i64..=2 {
            for k in -2i64..=2 {
                if (j, k) < (0, 0) {
                    continue;
                }
                let z = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                let z = if (j, k) == (0, 0) { C64::new(z.re, 0.0) } else { z };
                let (u, v) = (j as f64 * lat.delta(), k as f64 * lat.dual_spacing());
                terms.push(SymbolTerm { x_freq: u, xi_freq: v, coeff: z });
                if (j, k) != (0, 0) {
                    terms.push(SymbolTerm { x_freq: -u, xi_freq: -v, coeff: z.conj() });
                }
            }
        }
        SymbolRep::new(terms)
    }

    #[test]
    fn lattice_definitions() {
        let lat = make_lattice(8, 0.5, -2.0).unwrap();
        let want = [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5];
        assert_eq!(lat.sites(), want);
        assert!(make_lattice(8, 0.5, -0.3).is_err());
        assert!(make_lattice(7, 0.5, 0.0).is_err());
        let s = lat.shift_channel(0.5);
        for j in 0..8 {
            assert_eq!(s.get(j, (j + 1) % 8), c(1.0));
        }
        let s3 = lat.shift(1.5);
        assert!((&s3.adjoint() * &s3).distance(&Operator::identity(16)).unwrap() <= 1e-14);
        assert_eq!(lat.positive_sites(), vec![4, 5, 6, 7]);
    }

    #[test]
    fn shift_is_exp_of_q() {
        let lat = make_lattice(16, 0.4, -3.2).unwrap();
        // the spectral route at t = δ + tiny agrees with the exact shift at δ
        let near = lat.shift_channel(0.4 + 1e-7);
        assert!(near.distance(&lat.shift_steps(1)).unwrap() < 1e-5);
        let generic = lat.shift_channel(0.13);
        assert!((&generic.adjoint() * &generic).distance(&Operator::identity(16)).unwrap() < 1e-12);
        let two = &lat.shift_channel(0.13) * &lat.shift_channel(0.2);
        assert!(two.distance(&lat.shift_channel(0.33)).unwrap() < 1e-12);
    }

    #[test]
    fn weyl_relation() {
        let lat = make_lattice(64, 0.25, -8.0).unwrap();
        assert_eq!(weyl_relation_residual(&lat, 0.0, 0.25).residual, 0.0);
        assert!(weyl_relation_residual(&lat, 0.3, 0.0).residual <= 1e-15);
        let r = weyl_relation_residual(&lat, lat.dual_spacing(), lat.delta());
        assert!(r.exact_path && r.residual <= 1e-12, "{r:?}");
        let r = weyl_relation_residual(&lat, 0.37, lat.delta());
        let wrap = r.predicted_wrap.unwrap();
        assert!(!r.exact_path && (r.residual - wrap).abs() <= 1e-12 && wrap > 0.1, "{r:?}");
    }

    #[test]
    fn quantize_examples() {
        let lat = MellinLattice::self_dual(16, -8).unwrap();
        let one = SymbolRep::new(vec![SymbolTerm { x_freq: 0.0, xi_freq: 0.0, coeff: c(1.0) }]);
        assert!(quantize(&lat, &one).unwrap().distance(&Operator::identity(32)).unwrap() < 1e-15);
        let u0 = 3.0 * lat.delta();
        let pure = SymbolRep::new(vec![SymbolTerm { x_freq: u0, xi_freq: 0.0, coeff: c(1.0) }]);
        assert!(quantize(&lat, &pure).unwrap().distance(&lat.shift(u0)).unwrap() < 1e-15);
        // symmetric ordering: e^{iv₀P/2} S(u₀) e^{iv₀P/2}
        let v0 = 2.0 * lat.dual_spacing();
        let mixed = SymbolRep::new(vec![SymbolTerm { x_freq: u0, xi_freq: v0, coeff: c(1.0) }]);
        let q = quantize(&lat, &mixed).unwrap();
        let half = lat.exp_p(v0 / 2.0);
        let sym = &(&half * &lat.shift(u0)) * &half;
        assert!(q.distance(&sym).unwrap() <= 1e-12);
        assert!((&q.adjoint() * &q).distance(&Operator::identity(32)).unwrap() <= 1e-12);
        let off = SymbolRep::new(vec![SymbolTerm { x_freq: 0.1, xi_freq: 0.0, coeff: c(1.0) }]);
        assert!(matches!(quantize(&lat, &off), Err(Error::Misaligned(_))));
    }

    #[test]
    fn real_symbols_quantize_to_hermitian() {
        let lat = MellinLattice::self_dual(32, -16).unwrap();
        let a = random_symbol(&lat, 3);
        assert!(a.is_real(1e-14));
        assert!(quantize(&lat, &a).unwrap().hermitian_defect().unwrap() <= 1e-12);
    }

    #[test]
    fn conjugation_shifts_symbol() {
        let lat = MellinLattice::self_dual(64, -32).unwrap();
        assert!(conjugation_residual(&lat, 0.0, &random_symbol(&lat, 1)).unwrap() <= 1e-15);
        let u0 = 2.0 * lat.delta();
        let t = 2.0 * lat.delta();
        let single = SymbolRep::new(vec![SymbolTerm { x_freq: u0, xi_freq: 0.0, coeff: c(1.0) }]);
        assert!(conjugation_residual(&lat, t, &single).unwrap() <= 1e-14);
        // the opposite twist e^{+itu} is wrong
        let u = lat.exp_p(t);
        let lhs = &(&u * &quantize(&lat, &single).unwrap()) * &u.adjoint();
        let wrong = lat.shift(u0).scale(C64::from_polar(1.0, t * u0));
        assert!(lhs.distance(&wrong).unwrap() > 0.1);
        assert!(conjugation_residual(&lat, t, &random_symbol(&lat, 2)).unwrap() <= 1e-10);
        assert!(conjugation_residual(&lat, 0.1, &single).is_err());
    }

    #[test]
    fn integral_and_norm() {
        let lx = 2.0 * PI;
        let g = |x: f64| 1.0 + 0.5 * x.cos() + 0.25 * (3.0 * x).sin();
        let even = SymbolRep::new(vec![]).with_principal(PrincipalSymbol::from_fn(lx, 32, g, g));
        assert!((nc_integral(&even).unwrap() - lx).abs() < 1e-13);
        let odd = SymbolRep::new(vec![]).with_principal(PrincipalSymbol::from_fn(lx, 32, g, |x| -g(x)));
        assert_eq!(nc_integral(&odd).unwrap(), 0.0);
        let h = lx / 32.0;
        let moved = even.translated(5.0 * h).unwrap();
        assert!((nc_integral(&moved).unwrap() - nc_integral(&even).unwrap()).abs() <= 1e-13);
        assert!((htau_norm(&moved).unwrap() - htau_norm(&even).unwrap()).abs() <= 1e-13);
        let ones = SymbolRep::new(vec![]).with_principal(PrincipalSymbol::from_fn(3.0, 12, |_| 1.0, |_| 1.0));
        assert!((htau_norm(&ones).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert!((htau_norm(&even.scaled(-2.0)).unwrap() - 2.0 * htau_norm(&even).unwrap()).abs() < 1e-13);
        assert!(nc_integral(&SymbolRep::new(vec![])).is_err());
        assert!(even.translated(0.1).is_err());
    }

    #[test]
    fn effects_and_covariance() {
        let lat = MellinLattice::self_dual(64, -32).unwrap();
        let dom = lat.x_domain();
        let lx = lat.x_length();
        let k = lat.positive_dim();
        let full = nc_effect(&lat, &RegionSet::full(dom)).unwrap();
        assert!(full.distance(&Operator::identity(k)).unwrap() <= 1e-12);
        let half = RegionSet::interval(dom, 0.0, lx / 2.0).unwrap();
        let e = nc_effect(&lat, &half).unwrap();
        let s = HermitianSpectrum::new(&e, 1e-12).unwrap();
        assert!(s.min() >= -1e-12 && s.max() <= 1.0 + 1e-12);
        assert_eq!(is_effect(&e, 1e-10).unwrap(), EffectClass::Effect);
        let q = lat.q_indicator(&half).unwrap();
        assert!((&q * &q).distance(&q).unwrap() <= 1e-12);
        assert_eq!(is_effect(&q, 1e-10).unwrap(), EffectClass::Projection);
        let p = nc_povm(&lat, 4).unwrap();
        assert!(povm_validate(&p, 1e-12).unwrap().pass);

        let dq = lat.dual_spacing();
        let b = RegionSet::interval(dom, 3.0 * dq, 20.0 * dq).unwrap();
        assert_eq!(nc_covariance_residual(&lat, 0.0, &b).unwrap().residual, 0.0);
        let r = nc_covariance_residual(&lat, 5.0 * dq, &b).unwrap();
        assert!(r.path == CovariancePath::Exact && r.residual <= 1e-12, "{r:?}");
        let r = nc_covariance_residual(&lat, 2.5 * dq, &b).unwrap();
        assert_eq!(r.path, CovariancePath::Interpolated);
        // two steps t then s equal one step t + s
        let (t, s) = (4.0 * dq, -7.0 * dq);
        let conj = |x: &Operator, t: f64| -> Operator {
            let r = lat.positive_sites();
            let ph: Vec<C64> = r.iter().map(|&j| C64::from_polar(1.0, t * lat.u(j))).collect();
            let n = ph.len();
            Operator::from_fn(2 * n, 2 * n, |a, bb| ph[a % n] * x.get(a, bb) * ph[bb % n].conj())
        };
        let e = nc_effect(&lat, &b).unwrap();
        assert!(conj(&conj(&e, t), s).distance(&conj(&e, t + s)).unwrap() <= 1e-12);
        assert!(conj(&e, t + s).distance(&nc_effect(&lat, &b.translate(t + s)).unwrap()).unwrap() <= 1e-12);
    }
}
