//! Truncated Hardy-space model of the harmonic oscillator.
//!
//! The basis is the monomial basis `z_n`, `n = 0..d−1`, with number operator
//! `N = diag(0, 1, …, d−1)`. Phase effects and the Toeplitz operator `F` are
//! compressions of Toeplitz operators, so their entries are exact closed forms.

use std::f64::consts::PI;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::modular::{build_modular, left_multiplication};
use crate::operator::{c, expi, Operator, C64, I};
use crate::povm::DiscretePovm;
use crate::region::{Domain, RegionSet};

/// Gibbs inputs must satisfy `β·d ≤` this bound.
pub const GIBBS_GUARD: f64 = 20.0;

pub fn number_operator(d: usize) -> Operator {
    Operator::from_real_diagonal(&(0..d).map(|n| n as f64).collect::<Vec<_>>())
}

/// `e^{−βN}/tr(e^{−βN})`; `β = 0` gives the tracial state `I/d`.
pub fn gibbs(beta: f64, d: usize) -> Result<Operator> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidArgument(format!("inverse temperature must be ≥ 0, got {beta}")));
    }
    let w: Vec<f64> = (0..d).map(|n| (-beta * n as f64).exp()).collect();
    let z: f64 = w.iter().sum();
    Ok(Operator::from_real_diagonal(&w.iter().map(|x| x / z).collect::<Vec<_>>()))
}

/// Refuses `β·d > 20`, where the modular construction loses accuracy.
pub fn gibbs_guard(beta: f64, d: usize) -> Result<()> {
    if beta * d as f64 > GIBBS_GUARD {
        Err(Error::Guard(format!("β·d = {} exceeds {GIBBS_GUARD}", beta * d as f64)))
    } else {
        Ok(())
    }
}

/// `(1/2π)∫_a^b e^{ikθ} dθ`.
fn arc_moment(k: i64, a: f64, b: f64) -> C64 {
    if k == 0 {
        c((b - a) / (2.0 * PI))
    } else {
        let kf = k as f64;
        (C64::from_polar(1.0, kf * b) - C64::from_polar(1.0, kf * a)) / (I * (2.0 * PI * kf))
    }
}

/// Phase effect `(E_B)_{mn} = (1/2π)∫_B e^{i(n−m)θ} dθ`.
pub fn phase_effect(b: &RegionSet, d: usize) -> Result<Operator> {
    if b.domain() != Domain::Circle {
        return Err(Error::InvalidArgument("phase effects need a region on the circle".into()));
    }
    // moments depend only on n − m
    let moments: Vec<C64> = (0..2 * d as i64 - 1)
        .map(|j| {
            let k = j - (d as i64 - 1);
            b.cells().iter().map(|&(lo, hi)| arc_moment(k, lo, hi)).sum()
        })
        .collect();
    Ok(Operator::from_fn(d, d, |m, n| moments[n + d - 1 - m]))
}

/// Phase POVM on `cells` equal arcs of `[−π, π)`.
pub fn phase_povm(d: usize, cells: usize) -> Result<DiscretePovm> {
    let partition = RegionSet::equal_partition(Domain::Circle, cells)?;
    let effects = partition.iter().map(|r| phase_effect(r, d)).collect::<Result<Vec<_>>>()?;
    DiscretePovm::new(partition, effects)
}

/// `‖e^{−itN} E_B e^{itN} − E_{e^{it}B}‖`.
pub fn covariance_residual(d: usize, t: f64, b: &RegionSet) -> Result<f64> {
    let e = phase_effect(b, d)?;
    let phases: Vec<C64> = (0..d).map(|n| C64::from_polar(1.0, -t * n as f64)).collect();
    let lhs = Operator::from_fn(d, d, |m, n| phases[m] * e.get(m, n) * phases[n].conj());
    let rhs = phase_effect(&b.translate(t), d)?;
    lhs.distance(&rhs)
}

/// Fourier coefficient `c_k` of `θ` on `[−π, π)`.
fn arg_coefficient(k: i64) -> C64 {
    if k == 0 {
        c(0.0)
    } else {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        I * (sign / k as f64)
    }
}

/// Toeplitz operator with symbol `arg z`, `F_{mn} = c_{m−n}`.
pub fn toeplitz_arg(d: usize) -> Operator {
    Operator::from_fn(d, d, |m, n| arg_coefficient(m as i64 - n as i64))
}

/// The alternating vector `v_m = (−1)^m`.
pub fn alternating_vector(d: usize) -> DVector<C64> {
    DVector::from_fn(d, |m, _| c(if m % 2 == 0 { 1.0 } else { -1.0 }))
}

#[derive(Clone, Debug)]
pub struct CommutatorDefect {
    /// `C = NF − FN + iI`.
    pub defect: Operator,
    /// Singular values of `C`, descending.
    pub singular_values: Vec<f64>,
    /// `σ₂/σ₁`.
    pub rank_ratio: f64,
    /// `|⟨u₁, v/‖v‖⟩|` for the top left singular vector `u₁` of `C`.
    pub alignment: f64,
    /// `‖C − i v v*‖`.
    pub closed_form_residual: f64,
}

impl CommutatorDefect {
    pub fn numerical_rank(&self, tol: f64) -> usize {
        let top = self.singular_values.first().copied().unwrap_or(0.0);
        self.singular_values.iter().filter(|&&s| s > tol * top).count()
    }
}

pub fn commutator_defect(d: usize) -> Result<CommutatorDefect> {
    if d < 2 {
        return Err(Error::InvalidArgument("commutator defect needs d ≥ 2".into()));
    }
    let n = number_operator(d);
    let f = toeplitz_arg(d);
    let defect = &n.commutator(&f)? + &Operator::identity(d).scale(I);
    let v = alternating_vector(d);
    let closed = Operator::outer(&v, &v).scale(I);
    let singular_values = defect.singular_values();
    let (_, top) = defect.top_left_singular();
    let alignment = top.dotc(&v).norm() / v.norm();
    Ok(CommutatorDefect {
        closed_form_residual: (&defect - &closed).norm(),
        rank_ratio: singular_values[1] / singular_values[0],
        singular_values,
        alignment,
        defect,
    })
}

/// `‖(NF − FN)h + ih‖`; vanishes when `Σ (−1)^n h_n = 0`.
pub fn heisenberg_residual(d: usize, h: &DVector<C64>) -> Result<f64> {
    if h.len() != d {
        return Err(Error::ShapeMismatch(format!("vector of length {} for d = {d}", h.len())));
    }
    let comm = number_operator(d).commutator(&toeplitz_arg(d))?;
    Ok((comm.apply(h) + h * I).norm())
}

/// `‖e^{isN} e^{itF} − e^{−ist} e^{itF} e^{isN}‖`.
pub fn weyl_failure_check(d: usize, s: f64, t: f64) -> Result<f64> {
    let esn = expi(&number_operator(d), s)?;
    let etf = expi(&toeplitz_arg(d), t)?;
    let lhs = &esn * &etf;
    let rhs = (&etf * &esn).scale(C64::from_polar(1.0, -s * t));
    lhs.distance(&rhs)
}

fn thermal_flowed_effect(beta: f64, d: usize, t: f64, b: &RegionSet) -> Result<Operator> {
    gibbs_guard(beta, d)?;
    let triple = build_modular(&gibbs(beta, d)?)?;
    triple.flow(t, &left_multiplication(&phase_effect(b, d)?))
}

/// `‖σ_t(E_B) − E_{e^{−iβt}B}‖` on the Hilbert–Schmidt carrier, for the
/// modular flow `σ_t = Δ^{−it}·Δ^{it}` of the Gibbs state. With this flow
/// `σ_t(A) = e^{iβtN} A e^{−iβtN}`, which rotates arcs by `−βt`.
pub fn thermal_covariance_residual(beta: f64, d: usize, t: f64, b: &RegionSet) -> Result<f64> {
    let lhs = thermal_flowed_effect(beta, d, t, b)?;
    let rhs = left_multiplication(&phase_effect(&b.translate(-beta * t), d)?);
    lhs.distance(&rhs)
}

/// Same as [`thermal_covariance_residual`] but against `E_{e^{+iβt}B}`; this
/// target is wrong for the flow above and is kept as a direction regression.
pub fn thermal_covariance_literal_residual(
    beta: f64,
    d: usize,
    t: f64,
    b: &RegionSet,
) -> Result<f64> {
    let lhs = thermal_flowed_effect(beta, d, t, b)?;
    let rhs = left_multiplication(&phase_effect(&b.translate(beta * t), d)?);
    lhs.distance(&rhs)
}

/// `‖σ^{β}_{t}(E_B) − σ^{β'}_{t'}(E_B)‖` for `βt = β't'`.
pub fn thermal_scale_residual(
    (beta, t): (f64, f64),
    (beta2, t2): (f64, f64),
    d: usize,
    b: &RegionSet,
) -> Result<f64> {
    thermal_flowed_effect(beta, d, t, b)?.distance(&thermal_flowed_effect(beta2, d, t2, b)?)
}
