use std::f64::consts::PI;

use modtime::weyl::{
    conjugation_residual, htau_norm, nc_covariance_residual, nc_integral, nc_povm, quantize,
    weyl_relation_residual, MellinLattice, PrincipalSymbol, SymbolRep, SymbolTerm,
};
use modtime::relativistic::CovariancePath;
use modtime::{random, RegionSet, C64};
use rand::Rng;

use super::{povm_residual, Builder};

const LATTICE: usize = 64;
const SYMBOL_GRID: usize = 48;

fn lattice(m: usize) -> modtime::Result<MellinLattice> {
    MellinLattice::self_dual(m, -(m as i64) / 2)
}

/// Real trigonometric symbol with frequencies on the lattice grids.
pub fn random_symbol(lat: &MellinLattice, rng: &mut impl Rng) -> SymbolRep {
    let mut terms = Vec::new();
    for j in -2i64..=2 {
        for k in -2i64..=2 {
            if (j, k) < (0, 0) {
                continue;
            }
            let z = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            let (u, v) = (j as f64 * lat.delta(), k as f64 * lat.dual_spacing());
            if (j, k) == (0, 0) {
                terms.push(SymbolTerm { x_freq: 0.0, xi_freq: 0.0, coeff: C64::new(z.re, 0.0) });
            } else {
                terms.push(SymbolTerm { x_freq: u, xi_freq: v, coeff: z });
                terms.push(SymbolTerm { x_freq: -u, xi_freq: -v, coeff: z.conj() });
            }
        }
    }
    SymbolRep::new(terms)
}

/// Principal symbol with a few random Fourier modes in each channel.
fn random_principal(rng: &mut impl Rng, lx: f64) -> SymbolRep {
    let coeffs: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
    let wave = move |x: f64, off: usize| {
        (1..=3).map(|k| coeffs[off + k - 1] * (2.0 * PI * k as f64 * x / lx + k as f64).cos()).sum::<f64>() + 0.5
    };
    let w2 = wave.clone();
    SymbolRep::new(vec![]).with_principal(PrincipalSymbol::from_fn(lx, SYMBOL_GRID, move |x| wave(x, 0), move |x| w2(x, 3)))
}

pub(super) fn cases(b: &mut Builder) {
    let m = b.cfg.m.unwrap_or(LATTICE);

    for (j, k) in [(1, 1), (3, -2), (-5, 7), (m as i64 / 2, 1)] {
        b.at_most(format!("weyl/relation-exact-t{j}-s{k}"), "Weyl relations", format!("m={m};t={j}*delta;s={k}*dq"), 1e-12, move |_| {
            let lat = lattice(m)?;
            let r = weyl_relation_residual(&lat, k as f64 * lat.dual_spacing(), j as f64 * lat.delta());
            if !r.exact_path {
                return Err(modtime::Error::Misaligned("pair is off the lattice grids".into()));
            }
            Ok(r.residual)
        });
    }
    b.at_most("weyl/relation-wrap-predicted", "Weyl relations", format!("m={m};s=0.37;t=delta"), 1e-12, move |_| {
        let lat = lattice(m)?;
        let r = weyl_relation_residual(&lat, 0.37, lat.delta());
        let wrap = r.predicted_wrap.ok_or_else(|| modtime::Error::Misaligned("t is off the grid".into()))?;
        Ok((r.residual - wrap).abs())
    });

    b.at_most("weyl/calculus-hermitian", "Weyl calculus", format!("m={m};real symbol"), 1e-12, move |seed| {
        let lat = lattice(m)?;
        let a = random_symbol(&lat, &mut random::rng(seed));
        quantize(&lat, &a)?.hermitian_defect()
    });
    b.at_most("weyl/calculus-symmetric-ordering", "Weyl calculus", format!("m={m};u=3delta;v=2dq"), 1e-12, move |_| {
        let lat = lattice(m)?;
        let (u0, v0) = (3.0 * lat.delta(), 2.0 * lat.dual_spacing());
        let one = SymbolRep::new(vec![SymbolTerm { x_freq: u0, xi_freq: v0, coeff: C64::new(1.0, 0.0) }]);
        let half = lat.exp_p(v0 / 2.0);
        quantize(&lat, &one)?.distance(&(&(&half * &lat.shift(u0)) * &half))
    });

    for i in 0..5 {
        b.at_most(format!("weyl/conjugation-{i:02}"), "Thm thermal-Dixmier(2)", format!("m={m};draw={i}"), 1e-10, move |seed| {
            let lat = lattice(m)?;
            let mut rng = random::rng(seed);
            let t = rng.random_range(-10i64..=10) as f64 * lat.dual_spacing();
            conjugation_residual(&lat, t, &random_symbol(&lat, &mut rng))
        });
        b.at_most(format!("weyl/htau-isometry-{i:02}"), "Thm thermal-Dixmier(2)", format!("grid={SYMBOL_GRID};draw={i}"), 1e-13, move |seed| {
            let mut rng = random::rng(seed);
            let lx = rng.random_range(2.0..10.0);
            let a = random_principal(&mut rng, lx);
            let t = rng.random_range(-100i64..100) as f64 * lx / SYMBOL_GRID as f64;
            Ok((htau_norm(&a.translated(t)?)? - htau_norm(&a)?).abs())
        });
        b.at_most(format!("weyl/nc-integral-invariance-{i:02}"), "NC integral", format!("grid={SYMBOL_GRID};draw={i}"), 1e-13, move |seed| {
            let mut rng = random::rng(seed);
            let lx = rng.random_range(2.0..10.0);
            let a = random_principal(&mut rng, lx);
            let t = rng.random_range(-100i64..100) as f64 * lx / SYMBOL_GRID as f64;
            Ok((nc_integral(&a.translated(t)?)? - nc_integral(&a)?).abs())
        });
    }
    b.at_most("weyl/channel-cancellation", "NC integral", "a0=g(x)sign(xi)", 0.0, |_| {
        let g = |x: f64| 1.0 + 0.5 * x.cos() + 0.25 * (3.0 * x).sin();
        let odd = SymbolRep::new(vec![]).with_principal(PrincipalSymbol::from_fn(2.0 * PI, 32, g, move |x| -g(x)));
        Ok(nc_integral(&odd)?.abs())
    });

    for k in [4, 8].into_iter().filter(|k| m.is_multiple_of(*k)) {
        b.at_most(format!("weyl/povm-axioms-k{k}"), "Thm thermal-Dixmier(1)", format!("m={m};k={k}"), 1e-12, move |_| {
            povm_residual(&nc_povm(&lattice(m)?, k)?)
        });
    }
    for i in 0..5 {
        b.at_most(format!("weyl/covariance-{i:02}"), "Thm thermal-Dixmier(3)", format!("m={m};aligned;draw={i}"), 1e-12, move |seed| {
            let lat = lattice(m)?;
            let dq = lat.dual_spacing();
            let mut rng = random::rng(seed);
            let start = rng.random_range(0..m - 1);
            let width = rng.random_range(1..=m - start);
            let region = RegionSet::interval(lat.x_domain(), start as f64 * dq, (start + width) as f64 * dq)?;
            let t = rng.random_range(-(m as i64)..=m as i64) as f64 * dq;
            let r = nc_covariance_residual(&lat, t, &region)?;
            match r.path {
                CovariancePath::Exact => Ok(r.residual),
                CovariancePath::Interpolated => Err(modtime::Error::Misaligned(format!("shift {t} fell off the grid"))),
            }
        });
    }
}
