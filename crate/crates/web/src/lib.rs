//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function has a plain Rust counterpart returning
//! `modtime::Result`, which the unit tests call natively.

use std::f64::consts::PI;

use modtime::contraction::{contraction_moment_povm, poisson_arc_mass};
use modtime::oscillator::phase_povm;
use modtime::relativistic::{make_grid, poisson_apply};
use modtime::{state_to_measure, Error, Operator, Result, C64};
use nalgebra::DVector;
use wasm_bindgen::prelude::*;

/// Depth used for the contraction demo; the dilation grows with the cells.
const DEMO_DEPTH: usize = 16;
/// Cell counts beyond this make the dilation too slow for a page.
const MAX_DEMO_CELLS: usize = 32;

/// Cell probabilities of the phase POVM for the truncated state
/// `ψ_n ∝ (r e^{−iθ₀})^n`, peaked at `θ₀`, after rotating it by `e^{itN}`.
/// Covariance moves the peak to `θ₀ − t`.
pub fn phase_distribution_impl(d: usize, r: f64, theta0: f64, t: f64, cells: usize) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidArgument(format!("radius must lie in [0, 1), got {r}")));
    }
    let psi = DVector::from_fn(d, |n, _| C64::from_polar(r.powi(n as i32), n as f64 * (t - theta0))).normalize();
    let rho = Operator::from_fn(d, d, |i, j| psi[i] * psi[j].conj());
    state_to_measure(&phase_povm(d, cells)?, &rho)
}

/// Cell masses of the contraction POVM of the scalar `r`, followed by the
/// exact Poisson-kernel masses of the same cells.
pub fn contraction_masses_impl(r: f64, cells: usize) -> Result<Vec<f64>> {
    if cells == 0 || cells > MAX_DEMO_CELLS {
        return Err(Error::InvalidArgument(format!("cells must lie in 1..={MAX_DEMO_CELLS}")));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidArgument(format!("radius must lie in [0, 1), got {r}")));
    }
    let (povm, _) = contraction_moment_povm(&Operator::from_diagonal(&[C64::new(r, 0.0)]), DEMO_DEPTH, cells)?;
    let mut out: Vec<f64> = povm.effects().iter().map(|e| e.get(0, 0).re).collect();
    out.extend(povm.partition().iter().map(|cell| cell.cells().iter().map(|&(a, b)| poisson_arc_mass(r, a, b)).sum::<f64>()));
    Ok(out)
}

/// A square wave on `n` points of a circle of length `2π`, then its
/// Poisson smoothing at height `y`; the two curves are concatenated.
pub fn poisson_smoothing_impl(n: usize, y: f64) -> Result<Vec<f64>> {
    let grid = make_grid(n, 2.0 * PI)?;
    let wave = DVector::from_fn(n, |j, _| C64::new(if grid.x(j) < PI { 1.0 } else { -1.0 }, 0.0));
    let smooth = poisson_apply(&grid, y, &wave)?;
    Ok(wave.iter().chain(smooth.iter()).map(|z| z.re).collect())
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn phase_distribution(d: usize, r: f64, theta0: f64, t: f64, cells: usize) -> std::result::Result<Vec<f64>, JsError> {
    phase_distribution_impl(d, r, theta0, t, cells).map_err(js)
}

#[wasm_bindgen]
pub fn contraction_masses(r: f64, cells: usize) -> std::result::Result<Vec<f64>, JsError> {
    contraction_masses_impl(r, cells).map_err(js)
}

#[wasm_bindgen]
pub fn poisson_smoothing(n: usize, y: f64) -> std::result::Result<Vec<f64>, JsError> {
    poisson_smoothing_impl(n, y).map_err(js)
}
