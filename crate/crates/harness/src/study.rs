//! Refinement sweeps: one error value per size, with a monotonicity flag.

use std::f64::consts::PI;

use modtime::relativistic::{make_grid, poisson_kernel_at_origin, rel_covariance_residual, HardyModel};
use modtime::weyl::MellinLattice;
use modtime::{RegionSet, C64};
use nalgebra::DVector;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StudyKind {
    /// `|K_n(0) − 1/π|` at `y = 1`, with `L = 8π·n/128`.
    PoissonKernel,
    /// Band residual of the relativistic covariance at `βt = 2.5h`, `L = 8π`.
    CovarianceInterp,
    /// Weyl defect on a centred Gaussian packet at `s = 0.37`, `t = δ`.
    WeylWrap,
}

impl StudyKind {
    pub fn name(self) -> &'static str {
        match self {
            StudyKind::PoissonKernel => "poisson-kernel",
            StudyKind::CovarianceInterp => "covariance-interp",
            StudyKind::WeylWrap => "weyl-wrap",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotone {
    Decreasing,
    NonMonotone,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Monotone {
    pub fn label(self) -> &'static str {
        match self {
            Monotone::Decreasing => "decreasing",
            Monotone::NonMonotone => "non-monotone",
            Monotone::NotApplicable => "n/a",
        }
    }

    fn of(errors: &[f64]) -> Self {
        match errors.len() {
            0 | 1 => Monotone::NotApplicable,
            _ if errors.windows(2).all(|w| w[1] < w[0]) => Monotone::Decreasing,
            _ => Monotone::NonMonotone,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StudyRow {
    pub size: usize,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StudyTable {
    pub kind: StudyKind,
    pub rows: Vec<StudyRow>,
    pub monotone: Monotone,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StudyError {
    NoSizes,
    Size { size: usize, reason: String },
}

impl std::fmt::Display for StudyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StudyError::NoSizes => f.write_str("a study needs at least one size"),
            StudyError::Size { size, reason } => write!(f, "size {size}: {reason}"),
        }
    }
}

impl std::error::Error for StudyError {}

const COVARIANCE_LENGTH: f64 = 8.0 * PI;
const PACKET_WIDTH: f64 = 2.0;
const WRAP_S: f64 = 0.37;

fn poisson_error(n: usize) -> modtime::Result<f64> {
    let length = 8.0 * PI * n as f64 / 128.0;
    Ok((poisson_kernel_at_origin(n, length, 1.0)? - 1.0 / PI).abs())
}

fn covariance_error(n: usize) -> modtime::Result<f64> {
    let model = HardyModel::new(make_grid(n, COVARIANCE_LENGTH)?);
    let h = model.grid().spacing();
    let region = RegionSet::interval(model.grid().domain(), 0.0, COVARIANCE_LENGTH / 4.0)?;
    Ok(rel_covariance_residual(&model, 1.0, 2.5 * h, &region)?.residual())
}

/// `‖(e^{isP}S(t) − e^{−ist}S(t)e^{isP})ψ‖` for a Gaussian `ψ` centred in both
/// channels. Only the packet's tail reaches the seam, so the defect shrinks
/// as the lattice grows.
fn wrap_error(m: usize) -> modtime::Result<f64> {
    let lat = MellinLattice::self_dual(m, -(m as i64) / 2)?;
    let t = lat.delta();
    let psi = DVector::from_fn(2 * m, |j, _| {
        let u = lat.u(j % m);
        C64::new((-u * u / (2.0 * PACKET_WIDTH * PACKET_WIDTH)).exp(), 0.0)
    })
    .normalize();
    let ep = lat.exp_p(WRAP_S);
    let st = lat.shift(t);
    let lhs = (&ep * &st).apply(&psi);
    let rhs = (&st * &ep).apply(&psi) * C64::from_polar(1.0, -WRAP_S * t);
    Ok((lhs - rhs).norm())
}

pub fn convergence_study(kind: StudyKind, sizes: &[usize]) -> Result<StudyTable, StudyError> {
    if sizes.is_empty() {
        return Err(StudyError::NoSizes);
    }
    let f = match kind {
        StudyKind::PoissonKernel => poisson_error,
        StudyKind::CovarianceInterp => covariance_error,
        StudyKind::WeylWrap => wrap_error,
    };
    let rows = sizes
        .par_iter()
        .map(|&size| {
            f(size)
                .map(|error| StudyRow { size, error })
                .map_err(|e| StudyError::Size { size, reason: e.to_string() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let errors: Vec<f64> = rows.iter().map(|r| r.error).collect();
    Ok(StudyTable { kind, monotone: Monotone::of(&errors), rows })
}

impl StudyTable {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["kind", "size", "error", "monotone"]).expect("in-memory csv");
        for r in &self.rows {
            w.write_record([self.kind.name(), &r.size.to_string(), &format!("{:e}", r.error), self.monotone.label()])
                .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_kernel_doubling_decreases() {
        let t = convergence_study(StudyKind::PoissonKernel, &[128, 256, 512, 1024]).unwrap();
        assert_eq!(t.monotone, Monotone::Decreasing, "{t:?}");
        assert!((t.rows[0].error - 1.656e-3).abs() < 1e-5);
    }

    #[test]
    fn covariance_interp_decreases() {
        let t = convergence_study(StudyKind::CovarianceInterp, &[128, 256, 512]).unwrap();
        assert_eq!(t.monotone, Monotone::Decreasing, "{t:?}");
        // second-order in h: each halving of h gains about a factor four
        let ratio = t.rows[0].error / t.rows[2].error;
        assert!(ratio > 10.0, "{t:?}");
    }

    #[test]
    fn weyl_wrap_decreases() {
        let t = convergence_study(StudyKind::WeylWrap, &[16, 32, 64]).unwrap();
        assert_eq!(t.monotone, Monotone::Decreasing, "{t:?}");
        assert!(t.rows[2].error < 1e-4, "{t:?}");
    }

    #[test]
    fn single_size_and_errors() {
        let t = convergence_study(StudyKind::PoissonKernel, &[256]).unwrap();
        assert_eq!((t.rows.len(), t.monotone), (1, Monotone::NotApplicable));
        assert!(t.to_csv().lines().nth(1).unwrap().ends_with(",n/a"));
        assert!(t.to_json().contains("\"n/a\""));
        assert_eq!(convergence_study(StudyKind::WeylWrap, &[]), Err(StudyError::NoSizes));
        assert!(matches!(convergence_study(StudyKind::PoissonKernel, &[7]), Err(StudyError::Size { size: 7, .. })));
    }

    #[test]
    fn non_monotone_flag() {
        assert_eq!(Monotone::of(&[1.0, 0.5, 0.7]), Monotone::NonMonotone);
        assert_eq!(Monotone::of(&[1.0, 1.0]), Monotone::NonMonotone);
        assert_eq!(Monotone::of(&[2.0, 1.0]), Monotone::Decreasing);
    }
}
