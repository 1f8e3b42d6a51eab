use std::f64::consts::PI;

use modtime::oscillator::{
    alternating_vector, commutator_defect, covariance_residual, gibbs, gibbs_guard, heisenberg_residual,
    phase_povm, thermal_covariance_literal_residual, thermal_covariance_residual, thermal_scale_residual,
    weyl_failure_check,
};
use modtime::{kms_residual, random, RegionSet};
use rand::Rng;

use super::{povm_residual, random_arcs, worst, Builder};

const PHASE_DIM: usize = 64;
const THERMAL_DIM: usize = 12;
const DEFECT_DIM: usize = 32;
/// Regression value of the Weyl defect at `(d, s, t) = (8, π, 1)`.
const WEYL_FROZEN: f64 = 1.41952364;

fn phase_cases(b: &mut Builder) {
    let d = b.cfg.d.unwrap_or(PHASE_DIM);
    for i in 0..20 {
        b.at_most(format!("oscillator/phase-covariance-{i:02}"), "Thm quantum-phase", format!("d={d};draw={i}"), 1e-10, move |seed| {
            let mut rng = random::rng(seed);
            let t = rng.random_range(-10.0..10.0);
            covariance_residual(d, t, &random_arcs(&mut rng)?)
        });
    }
    b.at_most(format!("oscillator/phase-povm-d{d}-k16"), "Thm quantum-phase", format!("d={d};k=16"), 1e-12, move |_| {
        povm_residual(&phase_povm(d, 16)?)
    });
}

fn defect_cases(b: &mut Builder) {
    let d = DEFECT_DIM;
    b.at_most(format!("oscillator/commutator-rank-d{d}"), "Commutator NF-FN", "sigma2/sigma1", 1e-10, move |_| {
        Ok(commutator_defect(d)?.rank_ratio)
    });
    b.at_most(format!("oscillator/commutator-alignment-d{d}"), "Commutator NF-FN", "1-|<u1,v>|", 1e-12, move |_| {
        Ok(1.0 - commutator_defect(d)?.alignment)
    });
    b.at_most(format!("oscillator/commutator-closed-form-d{d}"), "Commutator NF-FN", "C=ivv*", 1e-10, move |_| {
        Ok(commutator_defect(d)?.closed_form_residual)
    });
    b.at_most(format!("oscillator/heisenberg-d{d}"), "Commutator NF-FN", "vectors=10;v-orthogonal", 1e-10, move |seed| {
        let mut rng = random::rng(seed);
        let v = alternating_vector(d);
        let mut res: f64 = 0.0;
        for _ in 0..10 {
            let h = random::unit_vector(&mut rng, d);
            let h = &h - &v * (v.dotc(&h) / v.norm_squared());
            res = worst([res, heisenberg_residual(d, &h.normalize())?]);
        }
        Ok(res)
    });
    b.at_least("oscillator/weyl-failure-d8", "Weyl failure", "d=8;s=pi;t=1", 0.1, |_| weyl_failure_check(8, PI, 1.0));
    b.at_most("oscillator/weyl-failure-frozen-d8", "Weyl failure", format!("d=8;s=pi;t=1;frozen={WEYL_FROZEN}"), 1e-6, |_| {
        Ok((weyl_failure_check(8, PI, 1.0)? - WEYL_FROZEN).abs())
    });
    b.at_most("oscillator/weyl-trivial-s0-d8", "Weyl failure", "d=8;s=0;t=1", 1e-14, |_| weyl_failure_check(8, 0.0, 1.0));
}

fn thermal_cases(b: &mut Builder) {
    let d = b.cfg.d.unwrap_or(THERMAL_DIM);
    for &beta in &b.cfg.betas.clone() {
        for i in 0..10 {
            let id = format!("oscillator/thermal-L-b{beta}-{i:02}");
            let param = format!("beta={beta};d={d};draw={i}");
            if let Err(e) = gibbs_guard(beta, d) {
                b.skip(id, "Thm thermal-L", param, 1e-8, e.to_string());
                continue;
            }
            b.at_most(id, "Thm thermal-L", param, 1e-8, move |seed| {
                let mut rng = random::rng(seed);
                let t = rng.random_range(-3.0..3.0);
                thermal_covariance_residual(beta, d, t, &random_arcs(&mut rng)?)
            });
        }
        b.at_most(format!("oscillator/kms-gibbs-b{beta}"), "KMS", format!("beta={beta};d={d};pairs=10"), 1e-12, move |seed| {
            gibbs_guard(beta, d)?;
            let t = gibbs(beta, d)?;
            let mut rng = random::rng(seed);
            let mut res: f64 = 0.0;
            for _ in 0..10 {
                let (a, c) = (random::gaussian(&mut rng, d, d), random::gaussian(&mut rng, d, d));
                res = worst([res, kms_residual(&t, &a, &c)?]);
            }
            Ok(res)
        });
    }
    let half = RegionSet::arc(-PI / 2.0, PI / 2.0).expect("valid arc");
    let arc = half.clone();
    // Negative control: rotating the arc the other way must not match.
    b.at_least("oscillator/thermal-L-direction", "Thm thermal-L", "beta=1;d=12;t=0.3;target=+beta*t", 1e-2, move |_| {
        thermal_covariance_literal_residual(1.0, THERMAL_DIM, 0.3, &arc)
    });
    b.at_most("oscillator/thermal-L-scaling", "Thm thermal-L", "d=8;(2,0.3)~(1,0.6)", 1e-8, move |_| {
        thermal_scale_residual((2.0, 0.3), (1.0, 0.6), 8, &half)
    });
}

pub(super) fn cases(b: &mut Builder) {
    phase_cases(b);
    defect_cases(b);
    thermal_cases(b);
}
