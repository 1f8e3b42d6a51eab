use std::f64::consts::PI;

use modtime::relativistic::{
    boundary_isometry_check, hardy_generator_residual, hardy_project, make_grid, poisson_apply,
    poisson_kernel_at_origin, rel_covariance_residual, rel_povm, tau_unitarity_residual, CovariancePath,
    HardyModel,
};
use modtime::{random, RegionSet};
use rand::Rng;

use super::{povm_residual, worst, Builder};

const GRID: usize = 256;
const LENGTH: f64 = 8.0 * PI;

fn model(n: usize) -> modtime::Result<HardyModel> {
    Ok(HardyModel::new(make_grid(n, LENGTH)?))
}

/// Poisson-kernel errors `|K_n(0) − 1/π|` at `y = 1` along `(n, L) = (128, 8π)·2^k`.
pub fn poisson_kernel_errors(steps: usize) -> modtime::Result<Vec<f64>> {
    (0..steps)
        .map(|k| {
            let s = 1usize << k;
            Ok((poisson_kernel_at_origin(128 * s, 8.0 * PI * s as f64, 1.0)? - 1.0 / PI).abs())
        })
        .collect()
}

pub(super) fn cases(b: &mut Builder) {
    let n = b.cfg.n.unwrap_or(GRID);
    let betas = b.cfg.betas.clone();

    for k in [4, 8, 16].into_iter().filter(|k| n.is_multiple_of(*k)) {
        b.at_most(format!("relativistic/povm-axioms-k{k}"), "Thm thermal-D(1)", format!("n={n};k={k}"), 1e-12, move |_| {
            povm_residual(&rel_povm(&model(n)?, k)?)
        });
    }

    for &beta in &betas {
        b.at_most(format!("relativistic/tau-unitarity-b{beta}"), "Thm thermal-D(2)", format!("n={n};beta={beta};t=0.7,-2.3"), 1e-12, move |seed| {
            let m = model(n)?;
            let mut rng = random::rng(seed);
            let mut res: f64 = 0.0;
            for size in [m.dim(), n] {
                let a = random::gaussian(&mut rng, size, size);
                let c = random::gaussian(&mut rng, size, size);
                let (a, c) = (a.scale_re(1.0 / a.frobenius_norm()), c.scale_re(1.0 / c.frobenius_norm()));
                for t in [0.7, -2.3] {
                    res = worst([res, tau_unitarity_residual(&m, beta, t, &a, &c)?]);
                }
            }
            Ok(res)
        });
    }

    for i in 0..10 {
        let betas = betas.clone();
        b.at_most(format!("relativistic/covariance-{i:02}"), "Thm thermal-D(3)", format!("n={n};aligned;draw={i}"), 1e-10, move |seed| {
            let m = model(n)?;
            let h = m.grid().spacing();
            let mut rng = random::rng(seed);
            let beta = betas[rng.random_range(0..betas.len())];
            let shift = rng.random_range(-(n as i64) / 4..=(n as i64) / 4);
            let start = rng.random_range(0..n - 1);
            let width = rng.random_range(1..=(n - start).min(n / 2));
            let region = RegionSet::interval(m.grid().domain(), start as f64 * h, (start + width) as f64 * h)?;
            // β = 0 freezes the flow; any t then gives the zero shift.
            let t = if beta == 0.0 { 1.0 } else { shift as f64 * h / beta };
            let r = rel_covariance_residual(&m, beta, t, &region)?;
            match r.path {
                CovariancePath::Exact => Ok(r.full),
                CovariancePath::Interpolated => Err(modtime::Error::Misaligned(format!("shift {t} fell off the grid"))),
            }
        });
    }
    b.at_most("relativistic/covariance-offgrid-band", "Thm thermal-D(3)", format!("n={n};beta*t=2.5h;band=16"), 1e-2, move |_| {
        let m = model(n)?;
        let h = m.grid().spacing();
        let region = RegionSet::interval(m.grid().domain(), 0.0, LENGTH / 4.0)?;
        Ok(rel_covariance_residual(&m, 1.0, 2.5 * h, &region)?.residual())
    });
    b.at_most("relativistic/hardy-generator", "Thm thermal-D(3)", format!("n={n};t=0.7"), 1e-12, move |_| {
        Ok(hardy_generator_residual(&model(n)?, 0.7))
    });

    b.at_most("relativistic/poisson-semigroup", "Poisson semigroup", format!("n={n};y=0.3+0.5"), 1e-12, move |seed| {
        let g = make_grid(n, LENGTH)?;
        let f = random::gaussian(&mut random::rng(seed), n, 1).column(0);
        let two = poisson_apply(&g, 0.3, &poisson_apply(&g, 0.5, &f)?)?;
        Ok((two - poisson_apply(&g, 0.8, &f)?).norm() / f.norm())
    });
    b.at_most("relativistic/poisson-kernel-refinement", "Poisson semigroup", "(n,L)=(128,8pi)*2^k;k<4;y=1", 0.0, |_| {
        let errs = poisson_kernel_errors(4)?;
        Ok(errs.windows(2).filter(|w| w[1] >= w[0]).count() as f64)
    });

    let ys: Vec<f64> = (0..20).map(|i| 10f64.powf(-3.0 + 4.0 * i as f64 / 19.0)).collect();
    let ys2 = ys.clone();
    b.at_most("relativistic/boundary-isometry", "Boundary isometry", format!("n={n};y=1e-3..10"), 1e-12, move |seed| {
        let g = make_grid(n, LENGTH)?;
        let f = hardy_project(&g, &random::gaussian(&mut random::rng(seed), n, 1).column(0))?;
        Ok(boundary_isometry_check(&g, &f, &ys)?.boundary_residual / f.norm())
    });
    b.at_most("relativistic/boundary-monotone", "Boundary isometry", format!("n={n};violations"), 0.0, move |seed| {
        let g = make_grid(n, LENGTH)?;
        let f = hardy_project(&g, &random::gaussian(&mut random::rng(seed), n, 1).column(0))?;
        let r = boundary_isometry_check(&g, &f, &ys2)?;
        Ok((r.monotonicity_violations + usize::from(!r.sup_at_smallest)) as f64)
    });
}
