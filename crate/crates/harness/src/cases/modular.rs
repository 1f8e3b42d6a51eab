use modtime::modular::{half_delta_residual, lemma_modular_residual, modtime_unitarity};
use modtime::oscillator::{gibbs, gibbs_guard};
use modtime::{build_gns, build_modular, funcalc_re, kms_residual, random, Operator, TraceWeight, C64};

use super::{worst, Builder};

const SAMPLES: usize = 20;
const KMS_DIM: usize = 6;

fn matrix_units(d: usize) -> Vec<Operator> {
    (0..d * d)
        .map(|k| Operator::from_fn(d, d, |i, j| C64::new(if i * d + j == k { 1.0 } else { 0.0 }, 0.0)))
        .collect()
}

fn gns_cases(b: &mut Builder) {
    let states = [("faithful", [0.3, 0.7], 4usize), ("pure", [1.0, 0.0], 2)];
    for (label, diag, dim) in states {
        b.at_most(format!("gns/m2-{label}-state"), "GNS", format!("T=diag({},{})", diag[0], diag[1]), 1e-12, move |seed| {
            let rep = build_gns(&matrix_units(2), &Operator::from_real_diagonal(&diag))?;
            let mut rng = random::rng(seed);
            let mut res: f64 = 0.0;
            for a in matrix_units(2).into_iter().chain((0..SAMPLES).map(|_| random::gaussian(&mut rng, 2, 2))) {
                res = worst([res, rep.state_residual(&a)?]);
            }
            Ok(res)
        });
        b.at_most(format!("gns/m2-{label}-dimension"), "GNS", format!("expected={dim}"), 0.0, move |_| {
            let rep = build_gns(&matrix_units(2), &Operator::from_real_diagonal(&diag))?;
            Ok(rep.dim().abs_diff(dim) as f64)
        });
    }
    b.at_most("gns/m2-inner-products", "GNS", "T=diag(0.3,0.7)", 1e-12, |seed| {
        let rep = build_gns(&matrix_units(2), &Operator::from_real_diagonal(&[0.3, 0.7]))?;
        let mut rng = random::rng(seed);
        let mut res: f64 = 0.0;
        for _ in 0..SAMPLES {
            let (a, c) = (random::gaussian(&mut rng, 2, 2), random::gaussian(&mut rng, 2, 2));
            res = worst([res, rep.inner_residual(&a, &c)?]);
        }
        Ok(res)
    });
}

fn triple_cases(b: &mut Builder) {
    let dims: Vec<usize> = match b.cfg.d {
        Some(d) => vec![d],
        None => (2..=6).collect(),
    };
    for d in dims {
        let param = format!("beta=1;d={d}");
        b.at_most(format!("modular/closed-forms-d{d}"), "Modular objects", param.clone(), 1e-8, move |_| {
            let m = build_modular(&gibbs(1.0, d)?)?;
            Ok(worst([m.diagnostics().delta_closed_form, m.diagnostics().j_closed_form]))
        });
        b.at_most(format!("modular/polar-d{d}"), "Modular objects", param.clone(), 1e-8, move |_| {
            let m = build_modular(&gibbs(1.0, d)?)?;
            let g = m.diagnostics();
            Ok(worst([g.polar, g.j_involution, g.s_defining]))
        });
        b.at_most(format!("modular/half-delta-d{d}"), "Half-Delta identity", param.clone(), 1e-8, move |seed| {
            let m = build_modular(&gibbs(1.0, d)?)?;
            let mut rng = random::rng(seed);
            let rs = (0..SAMPLES).map(|_| half_delta_residual(&m, &random::gaussian(&mut rng, d, d)));
            Ok(worst(rs.collect::<modtime::Result<Vec<_>>>()?))
        });
        b.at_most(format!("modular/lemma-d{d}"), "Lemma modular", param, 1e-8, move |seed| {
            let m = build_modular(&gibbs(1.0, d)?)?;
            let mut rng = random::rng(seed);
            let rs = (0..SAMPLES).map(|_| lemma_modular_residual(&m, &random::gaussian(&mut rng, d, d)));
            Ok(worst(rs.collect::<modtime::Result<Vec<_>>>()?))
        });
    }
}

fn kms_cases(b: &mut Builder) {
    let mut betas = b.cfg.betas.clone();
    if !betas.contains(&0.0) {
        betas.push(0.0);
    }
    for beta in betas {
        b.at_most(format!("kms/beta{beta}-d{KMS_DIM}"), "KMS", format!("beta={beta};d={KMS_DIM};pairs={SAMPLES}"), 1e-12, move |seed| {
            gibbs_guard(beta, KMS_DIM)?;
            let t = gibbs(beta, KMS_DIM)?;
            let mut rng = random::rng(seed);
            let mut res: f64 = 0.0;
            for _ in 0..SAMPLES {
                let (a, c) = (random::gaussian(&mut rng, KMS_DIM, KMS_DIM), random::gaussian(&mut rng, KMS_DIM, KMS_DIM));
                res = worst([res, kms_residual(&t, &a, &c)?]);
            }
            Ok(res)
        });
    }
    // β = 0: the modular flow of the tracial state must be the identity map.
    b.at_most("kms/beta0-trivial-flow", "KMS", format!("beta=0;d={KMS_DIM};t=0.3,1,-2.5"), 0.0, |seed| {
        let m = build_modular(&gibbs(0.0, KMS_DIM)?)?;
        let mut rng = random::rng(seed);
        let mut res: f64 = 0.0;
        for _ in 0..SAMPLES {
            let a = random::gaussian(&mut rng, KMS_DIM, KMS_DIM);
            for t in [0.3, 1.0, -2.5] {
                res = worst([res, m.flow_element(t, &a)?.distance(&a)?]);
            }
        }
        Ok(res)
    });
}

fn trace_cases(b: &mut Builder) {
    let h = Operator::from_real_diagonal(&[0.0, 1.0, 2.0, 3.0]);
    let hh = h.clone();
    b.at_most("trace/axioms-thermal", "Trace axioms", "d=4;beta=1;scalar=2.5", 1e-12, move |seed| {
        let mut rng = random::rng(seed);
        let samples: Vec<_> = (0..5).map(|_| random::gaussian(&mut rng, 4, 4)).collect();
        let r = TraceWeight::thermal(&hh, 1.0)?.axiom_report(&samples, 2.5)?;
        Ok(worst([r.homogeneity, r.additivity]))
    });
    b.at_most("trace/cyclicity-tracial", "Trace axioms", "d=4;weight=I", 1e-12, |seed| {
        let mut rng = random::rng(seed);
        let samples: Vec<_> = (0..5).map(|_| random::gaussian(&mut rng, 4, 4)).collect();
        Ok(TraceWeight::new(Operator::identity(4))?.axiom_report(&samples, 2.5)?.cyclicity)
    });
    b.at_most("trace/cauchy-schwarz", "Trace axioms", format!("d=4;beta=1;pairs={SAMPLES}"), 1e-12, move |seed| {
        let tau = TraceWeight::thermal(&h, 1.0)?;
        let mut rng = random::rng(seed);
        let mut res: f64 = 0.0;
        for _ in 0..SAMPLES {
            let (a, c) = (random::gaussian(&mut rng, 4, 4), random::gaussian(&mut rng, 4, 4));
            let bound = tau.inner(&a, &a)?.re * tau.inner(&c, &c)?.re;
            res = worst([res, (tau.inner(&a, &c)?.norm_sqr() - bound) / bound]);
        }
        Ok(res)
    });
}

fn modtime_cases(b: &mut Builder) {
    b.at_most("modtime/commuting-weight", "Def modular time", "d=6;W=T^1.3", 1e-12, |seed| {
        let mut rng = random::rng(seed);
        let u = random::unitary(&mut rng, 6);
        let diag = Operator::from_real_diagonal(&[0.5, 1.0, 1.5, 2.0, 3.0, 4.0]);
        let t = (&(&u * &diag) * &u.adjoint()).hermitian_part();
        let w = TraceWeight::new(funcalc_re(&t, |x| x.powf(1.3))?)?;
        let pairs: Vec<_> = (0..4).map(|_| (random::gaussian(&mut rng, 6, 6), random::gaussian(&mut rng, 6, 6))).collect();
        let r = modtime_unitarity(&w, &t, &[0.0, 0.4, 1.3, -2.0], &pairs)?;
        Ok(worst([r.max_unitarity(), r.group_law]))
    });
    // Negative control: a weight that does not commute with T breaks unitarity.
    b.at_least("modtime/noncommuting-weight", "Def modular time", "W=diag(1,2);T=[[2,1],[1,2]];t=1", 0.1, |_| {
        let w = TraceWeight::new(Operator::from_real_diagonal(&[1.0, 2.0]))?;
        let one = C64::new(1.0, 0.0);
        let t = Operator::from_rows(&[vec![one * 2.0, one], vec![one, one * 2.0]])?;
        let a = Operator::from_rows(&[vec![C64::new(0.0, 0.0), one], vec![C64::new(0.0, 0.0); 2]])?;
        Ok(modtime_unitarity(&w, &t, &[1.0], &[(a.clone(), a)])?.max_unitarity())
    });
}

pub(super) fn cases(b: &mut Builder) {
    gns_cases(b);
    triple_cases(b);
    kms_cases(b);
    trace_cases(b);
    modtime_cases(b);
}
