use std::sync::OnceLock;

use modtime::contraction::{contraction_moment_povm, poisson_arc_mass, MomentReport};
use modtime::oscillator::{phase_povm, toeplitz_arg};
use modtime::povm::DiscretePovm;
use modtime::{
    funcalc_re, naimark_dilate, povm_integrate, povm_validate, random, state_to_measure, Operator, C64,
};
use rand::Rng;

use super::{povm_residual, worst, Builder};

const MOMENT_DEPTH: usize = 32;
const MOMENT_CELLS: usize = 64;

type Contraction = modtime::Result<(DiscretePovm, MomentReport)>;

/// Scalar inputs of the contraction cases. Each dilation is large, so every
/// input is built once per process and shared by the cases that read it.
const ZERO: usize = 0;
const HALF: usize = 1;
const UNITARY: usize = 2;

fn scalar_input(i: usize) -> C64 {
    [C64::new(0.0, 0.0), C64::new(0.5, 0.0), C64::from_polar(1.0, 0.7)][i]
}

fn contraction(i: usize) -> Contraction {
    static CACHE: [OnceLock<Contraction>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[i]
        .get_or_init(|| contraction_moment_povm(&Operator::from_diagonal(&[scalar_input(i)]), MOMENT_DEPTH, MOMENT_CELLS))
        .clone()
}

pub(super) fn cases(b: &mut Builder) {
    for (d, k) in [(2, 2), (4, 3), (8, 6)] {
        b.at_most(format!("povm/axioms-d{d}-k{k}"), "POVM axioms", format!("d={d};k={k}"), 1e-12, move |seed| {
            povm_residual(&random::povm(&mut random::rng(seed), d, k)?)
        });
    }

    b.at_most("povm/state-measure-affine", "Thm state-measure", "d=6;k=5;samples=10", 1e-13, |seed| {
        let mut rng = random::rng(seed);
        let p = random::povm(&mut rng, 6, 5)?;
        let mut res: f64 = 0.0;
        for _ in 0..10 {
            let (t1, t2) = (random::density(&mut rng, 6), random::density(&mut rng, 6));
            let lam: f64 = rng.random();
            let mix = &t1.scale_re(lam) + &t2.scale_re(1.0 - lam);
            let (m, a, c) = (state_to_measure(&p, &mix)?, state_to_measure(&p, &t1)?, state_to_measure(&p, &t2)?);
            for i in 0..m.len() {
                res = worst([res, (m[i] - lam * a[i] - (1.0 - lam) * c[i]).abs(), -m[i]]);
            }
            res = worst([res, (m.iter().sum::<f64>() - 1.0).abs()]);
        }
        Ok(res)
    });

    for (d, k) in [(1, 1), (2, 3), (4, 8), (8, 5), (16, 8)] {
        b.at_most(format!("povm/naimark-d{d}-k{k}"), "Thm Naimark", format!("d={d};k={k}"), 1e-12, move |seed| {
            let p = random::povm(&mut random::rng(seed), d, k)?;
            let n = naimark_dilate(&p)?;
            Ok(worst([n.reconstruction_residual(&p), n.isometry_residual()]))
        });
    }
    b.at_most("povm/naimark-phase-d16-k8", "Thm Naimark", "d=16;k=8", 1e-12, |_| {
        let p = phase_povm(16, 8)?;
        let n = naimark_dilate(&p)?;
        Ok(worst([n.reconstruction_residual(&p), n.isometry_residual()]))
    });

    b.at_most("povm/funcalc-identity", "Functional calculus", "d=32", 1e-12, |seed| {
        let h = random::hermitian(&mut random::rng(seed), 32);
        Ok(funcalc_re(&h, |x| x)?.distance(&h)? / h.norm())
    });
    b.at_most("povm/funcalc-composition", "Functional calculus", "d=12;f=exp;g=x^2", 1e-10, |seed| {
        let h = random::hermitian(&mut random::rng(seed), 12).scale_re(0.25);
        let sq = &h * &h;
        let direct = funcalc_re(&h, |x| (x * x).exp())?;
        Ok(direct.distance(&funcalc_re(&sq, f64::exp)?)? / direct.norm())
    });
    b.at_most("povm/psi-bound", "Functional calculus", "d=6;k=8;samples=5", 1e-12, |seed| {
        let mut rng = random::rng(seed);
        let p = random::povm(&mut rng, 6, 8)?;
        let reps: Vec<f64> = p.partition().iter().filter_map(|r| r.representative()).collect();
        let mut res: f64 = 0.0;
        for _ in 0..5 {
            let values: Vec<C64> = (0..8)
                .map(|_| C64::from_polar(rng.random_range(0.0..3.0), rng.random_range(-3.0..3.0)))
                .collect();
            let f = |x: f64| reps.iter().position(|&r| r == x).map_or(C64::new(0.0, 0.0), |i| values[i]);
            let sup = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let psi = povm_integrate(&p, f)?;
            let conj = povm_integrate(&p, |x| f(x).conj())?;
            res = worst([res, psi.norm() - sup, conj.distance(&psi.adjoint())?]);
        }
        Ok(res)
    });
    b.at_most("povm/psi-arg-refinement", "Functional calculus", "d=8;cells=64", 1e-12, |_| {
        let p = phase_povm(8, 64)?;
        povm_integrate(&p, |x| C64::new(x, 0.0))?.distance(&toeplitz_arg(8))
    });

    for (label, i) in [("zero", ZERO), ("half", HALF), ("unitary", UNITARY)] {
        let param = format!("T={};depth={MOMENT_DEPTH};cells={MOMENT_CELLS}", scalar_input(i));
        b.at_most(format!("contraction/moments-{label}"), "Thm contraction POVM", param, 1e-8, move |_| {
            let (_, report) = contraction(i)?;
            Ok(worst(report.moment_residuals.iter().take(MOMENT_DEPTH).copied()))
        });
    }
    b.at_most(
        "contraction/poisson-masses-half",
        "Thm contraction POVM",
        format!("r=0.5;depth={MOMENT_DEPTH};cells={MOMENT_CELLS}"),
        1e-2,
        |_| {
            let (p, _) = contraction(HALF)?;
            let errs = p.partition().iter().zip(p.effects()).map(|(cell, e)| {
                let mass: f64 = cell.cells().iter().map(|&(a, b)| poisson_arc_mass(0.5, a, b)).sum();
                (e.get(0, 0).re - mass).abs()
            });
            Ok(worst(errs))
        },
    );
    b.at_most("contraction/unitary-multiplicative", "Thm contraction POVM", "T=e^{0.7i};cells=64", 1e-8, |_| {
        let (p, _) = contraction(UNITARY)?;
        Ok(povm_validate(&p, 1e-8)?.multiplicativity_defect)
    });
    b.at_least("contraction/half-not-multiplicative", "Thm contraction POVM", "T=0.5;cells=64", 1e-3, |_| {
        let (p, _) = contraction(HALF)?;
        Ok(povm_validate(&p, 1e-8)?.multiplicativity_defect)
    });
}
