//! Positive operator-valued measures over finite partitions.
//!
//! A [`DiscretePovm`] pairs the cells of a partition of the circle (or of a
//! circular line) with effects. Effects of unions are sums of cell effects, so
//! additivity holds by construction and validation reduces to the normalization
//! `Σ E_i = I` and the effect bounds.

use crate::error::{Error, Result};
use crate::operator::{is_effect, require_density, EffectClass, Operator, C64, DEFAULT_TOL};
use crate::region::RegionSet;

#[derive(Clone, Debug)]
pub struct DiscretePovm {
    partition: Vec<RegionSet>,
    effects: Vec<Operator>,
    dim: usize,
}

impl DiscretePovm {
    /// Checks shapes and that the partition cells are disjoint and cover
    /// their domain. Effect bounds and normalization are checked by
    /// [`povm_validate`].
    pub fn new(partition: Vec<RegionSet>, effects: Vec<Operator>) -> Result<Self> {
        if partition.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if partition.len() != effects.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} cells but {} effects",
                partition.len(),
                effects.len()
            )));
        }
        let dim = effects[0].require_square()?;
        for e in &effects {
            if e.shape() != (dim, dim) {
                return Err(Error::ShapeMismatch(format!(
                    "effect of shape {}x{} in a {dim}-dimensional POVM",
                    e.rows(),
                    e.cols()
                )));
            }
        }
        let domain = partition[0].domain();
        if partition.iter().any(|r| r.domain() != domain) {
            return Err(Error::InvalidPartition("cells on different domains".into()));
        }
        for (i, a) in partition.iter().enumerate() {
            if partition[i + 1..].iter().any(|b| !a.is_disjoint(b)) {
                return Err(Error::InvalidPartition(format!("cell {i} overlaps another cell")));
            }
        }
        let total: f64 = partition.iter().map(RegionSet::measure).sum();
        if (total - domain.period()).abs() > 1e-9 * domain.period() {
            return Err(Error::InvalidPartition(format!(
                "cells cover {total} of a domain of measure {}",
                domain.period()
            )));
        }
        Ok(Self { partition, effects, dim })
    }

    pub fn partition(&self) -> &[RegionSet] {
        &self.partition
    }

    pub fn effects(&self) -> &[Operator] {
        &self.effects
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    /// Effect of a union of cells.
    pub fn effect_of(&self, cells: &[usize]) -> Operator {
        let mut sum = Operator::zeros(self.dim, self.dim);
        for &i in cells {
            sum = &sum + &self.effects[i];
        }
        sum
    }

    pub fn total(&self) -> Operator {
        self.effect_of(&(0..self.len()).collect::<Vec<_>>())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PovmReport {
    /// `‖Σ E_i − I‖`.
    pub sum_residual: f64,
    pub classes: Vec<EffectClass>,
    /// All pairs satisfy `E_i E_j ≈ δ_ij E_i`.
    pub multiplicative: bool,
    /// Largest `‖E_i E_j − δ_ij E_i‖`.
    pub multiplicativity_defect: f64,
    pub pass: bool,
}

pub fn povm_validate(p: &DiscretePovm, tol: f64) -> Result<PovmReport> {
    if p.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    let sum_residual = (&p.total() - &Operator::identity(p.dim)).norm();
    let classes = p
        .effects
        .iter()
        .map(|e| is_effect(e, tol))
        .collect::<Result<Vec<_>>>()?;
    let mut defect: f64 = 0.0;
    for (i, ei) in p.effects.iter().enumerate() {
        for (j, ej) in p.effects.iter().enumerate().skip(i) {
            let prod = ei * ej;
            let r = if i == j { (&prod - ei).norm() } else { prod.norm() };
            defect = defect.max(r);
        }
    }
    let pass = sum_residual <= tol && classes.iter().all(|c| *c != EffectClass::NotEffect);
    Ok(PovmReport {
        sum_residual,
        classes,
        multiplicative: defect <= tol,
        multiplicativity_defect: defect,
        pass,
    })
}

/// Outcome distribution `i ↦ tr(E_i T)` of a density operator `T`.
pub fn state_to_measure(p: &DiscretePovm, t: &Operator) -> Result<Vec<f64>> {
    if t.shape() != (p.dim, p.dim) {
        return Err(Error::ShapeMismatch(format!(
            "state of shape {}x{} for a {}-dimensional POVM",
            t.rows(),
            t.cols(),
            p.dim
        )));
    }
    require_density(t, DEFAULT_TOL)?;
    p.effects
        .iter()
        .map(|e| Ok(e.checked_mul(t)?.trace()?.re))
        .collect()
}

/// Bounded functional calculus `Ψ(f) = Σ f(x_i) E_i`, with `x_i` the cell
/// representative (midpoint).
pub fn povm_integrate(p: &DiscretePovm, f: impl Fn(f64) -> C64) -> Result<Operator> {
    let mut sum = Operator::zeros(p.dim, p.dim);
    for (cell, e) in p.partition.iter().zip(&p.effects) {
        let x = cell
            .representative()
            .ok_or_else(|| Error::InvalidPartition("empty cell".into()))?;
        sum = &sum + &e.scale(f(x));
    }
    Ok(sum)
}

/// Naimark dilation: an isometry `J: C^d → C^{k·d}` with `E_i = J* P̃_i J`,
/// where `P̃_i` selects block `i`.
#[derive(Clone, Debug)]
pub struct NaimarkDilation {
    pub isometry: Operator,
    pub blocks: usize,
    pub dim: usize,
}

impl NaimarkDilation {
    /// Projection onto block `i` of the dilation space.
    pub fn block_projection(&self, i: usize) -> Operator {
        let n = self.blocks * self.dim;
        let (lo, hi) = (i * self.dim, (i + 1) * self.dim);
        Operator::from_fn(n, n, |r, c| {
            if r == c && r >= lo && r < hi {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// `J* P̃_i J`.
    pub fn compress(&self, i: usize) -> Operator {
        let j = &self.isometry;
        &(&j.adjoint() * &self.block_projection(i)) * j
    }

    /// `‖J*J − I‖`.
    pub fn isometry_residual(&self) -> f64 {
        let j = &self.isometry;
        (&(&j.adjoint() * j) - &Operator::identity(self.dim)).norm()
    }

    /// `max_i ‖J* P̃_i J − E_i‖`.
    pub fn reconstruction_residual(&self, p: &DiscretePovm) -> f64 {
        (0..self.blocks)
            .map(|i| (&self.compress(i) - &p.effects()[i]).norm())
            .fold(0.0, f64::max)
    }
}

/// Stacks the square roots `E_i^{1/2}` into an isometry.
pub fn naimark_dilate(p: &DiscretePovm) -> Result<NaimarkDilation> {
    let report = povm_validate(p, DEFAULT_TOL)?;
    if !report.pass {
        return Err(Error::InvalidPovm(format!(
            "sum residual {:.3e}, classes {:?}",
            report.sum_residual, report.classes
        )));
    }
    let d = p.dim;
    let k = p.len();
    let roots = p
        .effects
        .iter()
        .map(|e| crate::operator::funcalc_re(e, |x| x.max(0.0).sqrt()))
        .collect::<Result<Vec<_>>>()?;
    let isometry = Operator::from_fn(k * d, d, |r, c| roots[r / d].get(r % d, c));
    Ok(NaimarkDilation { isometry, blocks: k, dim: d })
}
