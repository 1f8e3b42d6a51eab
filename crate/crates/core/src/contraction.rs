//! The circle-valued POVM of a contraction.
//!
//! A contraction `T` is dilated to a unitary `U` on `(K+1)` copies of the
//! space (Egerváry's construction), which satisfies `P U^n P* = T^n` for
//! `0 ≤ n ≤ K`. The spectral measure of `U`, compressed back to the original
//! space, is a POVM on the circle whose Fourier moments reproduce the powers
//! of `T` up to the dilation depth.

use std::f64::consts::PI;

use nalgebra::linalg::{Schur, SymmetricEigen};
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::operator::{funcalc_re, Operator, C64, DEFAULT_TOL};
use crate::povm::DiscretePovm;
use crate::region::{Domain, RegionSet};

/// The dilation depth is at least this many times the number of cells, so
/// that each cell receives many spectral atoms.
pub const DILATION_OVERSAMPLING: usize = 8;

/// Egerváry's unitary `(K+1)`-block dilation of a contraction.
pub fn unitary_dilation(t: &Operator, depth: usize) -> Result<Operator> {
    let d = t.require_square()?;
    if depth == 0 {
        return Err(Error::InvalidArgument("dilation depth must be positive".into()));
    }
    let norm = t.norm();
    if norm > 1.0 + DEFAULT_TOL {
        return Err(Error::NotContraction { norm });
    }
    let id = Operator::identity(d);
    let defect = funcalc_re(&(&id - &(&t.adjoint() * t)).hermitian_part(), |x| x.max(0.0).sqrt())?;
    let defect_star =
        funcalc_re(&(&id - &(t * &t.adjoint())).hermitian_part(), |x| x.max(0.0).sqrt())?;
    let t_star = t.adjoint();
    let blocks = depth + 1;
    let n = blocks * d;
    let last = depth;
    Ok(Operator::from_fn(n, n, |r, col| {
        let (bi, i) = (r / d, r % d);
        let (bj, j) = (col / d, col % d);
        match (bi, bj) {
            (0, 0) => t.get(i, j),
            (0, b) if b == last => defect_star.get(i, j),
            (1, 0) => defect.get(i, j),
            (1, b) if b == last => -t_star.get(i, j),
            (a, b) if a >= 2 && b + 1 == a => id.get(i, j),
            _ => C64::new(0.0, 0.0),
        }
    }))
}

/// Cell index of an angle for `cells` equal arcs of `[−π, π)`. Angles on a
/// boundary go to the cell whose left endpoint they are.
pub fn cell_of_angle(theta: f64, cells: usize) -> usize {
    let w = 2.0 * PI / cells as f64;
    let x = (theta + PI) / w;
    let nearest = x.round();
    let j = if (x - nearest).abs() <= 1e-9 { nearest } else { x.floor() };
    (j as i64).rem_euclid(cells as i64) as usize
}

/// One eigenvalue of the dilation with its compressed weight `‖P q‖²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralAtom {
    pub angle: f64,
    pub cell: usize,
    pub weight: f64,
}

#[derive(Clone, Debug)]
pub struct MomentReport {
    pub requested_depth: usize,
    pub dilation_depth: usize,
    /// `‖T^n − Σ_i e^{inθ_i} P q_i q_i* P*‖` for `n = 0..requested_depth`,
    /// from the unbinned spectral measure.
    pub moment_residuals: Vec<f64>,
    /// Moments certified exact by construction: `n ≤ dilation_depth`.
    pub certified_moments: usize,
    /// `‖Σ_j e^{iθ_j} E_j − T‖` with `θ_j` the cell midpoints.
    pub binned_first_moment_error: f64,
    /// Frobenius norm of `U*U − I`, an upper bound on the operator-norm defect.
    pub dilation_unitarity_residual: f64,
    pub atoms: Vec<SpectralAtom>,
}

impl MomentReport {
    pub fn max_moment_residual(&self) -> f64 {
        self.moment_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Eigenvectors and eigen-angles of a unitary matrix.
///
/// The Hermitian matrix `Re U + c·Im U` commutes with `U`, so for a generic
/// real `c` its eigenvectors diagonalize `U` and the Hermitian solver applies.
/// A residual check catches accidental collisions and falls back to Schur.
fn unitary_eigen(u: Operator) -> Result<(DMatrix<C64>, Vec<f64>)> {
    const MIX: f64 = 0.618_033_988_749_894_8;
    let m = u.as_matrix();
    let n = m.nrows();
    let adj = m.adjoint();
    let half = C64::new(0.5, 0.0);
    let re = (m + &adj) * half;
    let im = (m - &adj) * C64::new(0.0, -0.5);
    let h = &re + im * C64::new(MIX, 0.0);
    let h = (&h + h.adjoint()) * half;
    let eig = SymmetricEigen::new(h);
    let q = eig.eigenvectors;
    let uq = m * &q;
    let mut angles = Vec::with_capacity(n);
    let mut worst = 0.0f64;
    for k in 0..n {
        let col = q.column(k);
        let lambda = col.dotc(&uq.column(k));
        worst = worst.max((uq.column(k) - col * lambda).norm());
        angles.push(lambda.arg());
    }
    if worst <= 1e-10 {
        return Ok((q, angles));
    }
    let schur = Schur::try_new(u.into_matrix(), f64::EPSILON, 0)
        .ok_or_else(|| Error::InvalidArgument("Schur iteration did not converge".into()))?;
    let (q, upper) = schur.unpack();
    let angles = (0..n).map(|k| upper[(k, k)].arg()).collect();
    Ok((q, angles))
}

/// Builds the binned POVM of a contraction together with its moment report.
pub fn contraction_moment_povm(
    t: &Operator,
    depth: usize,
    cells: usize,
) -> Result<(DiscretePovm, MomentReport)> {
    let d = t.require_square()?;
    if cells == 0 {
        return Err(Error::InvalidArgument("at least one cell is required".into()));
    }
    let dilation_depth = depth.max(DILATION_OVERSAMPLING * cells);
    let u = unitary_dilation(t, dilation_depth)?;
    let n = u.rows();
    let unitarity = (&(&u.adjoint() * &u) - &Operator::identity(n)).frobenius_norm();

    let (q, angles) = unitary_eigen(u)?;

    let mut effects = vec![Operator::zeros(d, d); cells];
    let mut atoms = Vec::with_capacity(n);
    let mut compressed = Vec::with_capacity(n);
    for (k, &angle) in angles.iter().enumerate() {
        let cell = cell_of_angle(angle, cells);
        let w = Operator::from_fn(d, 1, |i, _| q[(i, k)]);
        let proj = &w * &w.adjoint();
        atoms.push(SpectralAtom { angle, cell, weight: w.frobenius_norm().powi(2) });
        effects[cell] = &effects[cell] + &proj;
        compressed.push((angle, proj));
    }
    let effects: Vec<Operator> = effects.iter().map(Operator::hermitian_part).collect();

    let mut moment_residuals = Vec::with_capacity(depth);
    let mut power = Operator::identity(d);
    for m in 0..depth {
        let mut sum = Operator::zeros(d, d);
        for (angle, proj) in &compressed {
            sum = &sum + &proj.scale(C64::from_polar(1.0, m as f64 * angle));
        }
        moment_residuals.push((&sum - &power).norm());
        power = &power * t;
    }

    let partition = RegionSet::equal_partition(Domain::Circle, cells)?;
    let mut first = Operator::zeros(d, d);
    for (cell, e) in partition.iter().zip(&effects) {
        let mid = cell.representative().expect("non-empty cell");
        first = &first + &e.scale(C64::from_polar(1.0, mid));
    }
    let binned_first_moment_error = (&first - t).norm();

    let povm = DiscretePovm::new(partition, effects)?;
    Ok((
        povm,
        MomentReport {
            requested_depth: depth,
            dilation_depth,
            moment_residuals,
            certified_moments: dilation_depth,
            binned_first_moment_error,
            dilation_unitarity_residual: unitarity,
            atoms,
        },
    ))
}

/// `∫_a^b P_r(θ) dθ / 2π` for the Poisson kernel
/// `P_r(θ) = (1 − r²)/(1 − 2r cos θ + r²)`, `0 ≤ r < 1`, `−π ≤ a ≤ b ≤ π`.
pub fn poisson_arc_mass(r: f64, a: f64, b: f64) -> f64 {
    let k = (1.0 + r) / (1.0 - r);
    let prim = |x: f64| -> f64 {
        if x <= -PI {
            -0.5
        } else if x >= PI {
            0.5
        } else {
            (k * (0.5 * x).tan()).atan() / PI
        }
    };
    prim(b) - prim(a)
}
