//! The case catalogue, one submodule per suite.

mod modular;
mod oscillator;
mod povm;
mod relativistic;
mod weyl;

use modtime::operator::HermitianSpectrum;
use modtime::{DiscretePovm, Domain, Operator, RegionSet};
use rand::Rng;

use crate::config::{Suite, SuiteConfig};
use crate::report::Bound;

pub type CheckFn = Box<dyn Fn(u64) -> modtime::Result<f64> + Send + Sync>;

pub enum Check {
    Run(CheckFn),
    Skip(String),
}

/// One entry of the catalogue. The closure receives a seed derived from the
/// run seed and the case id, so its inputs do not depend on scheduling.
pub struct CaseSpec {
    pub id: String,
    pub anchor: &'static str,
    pub param: String,
    pub tol: f64,
    pub bound: Bound,
    pub check: Check,
}

pub(crate) struct Builder<'a> {
    pub cfg: &'a SuiteConfig,
    pub cases: Vec<CaseSpec>,
}

impl<'a> Builder<'a> {
    fn new(cfg: &'a SuiteConfig) -> Self {
        Builder { cfg, cases: Vec::new() }
    }

    fn push(&mut self, id: String, anchor: &'static str, param: String, tol: f64, bound: Bound, check: Check) {
        self.cases.push(CaseSpec { id, anchor, param, tol, bound, check });
    }

    pub fn at_most(
        &mut self,
        id: impl Into<String>,
        anchor: &'static str,
        param: impl Into<String>,
        tol: f64,
        f: impl Fn(u64) -> modtime::Result<f64> + Send + Sync + 'static,
    ) {
        self.push(id.into(), anchor, param.into(), tol, Bound::AtMost, Check::Run(Box::new(f)));
    }

    pub fn at_least(
        &mut self,
        id: impl Into<String>,
        anchor: &'static str,
        param: impl Into<String>,
        tol: f64,
        f: impl Fn(u64) -> modtime::Result<f64> + Send + Sync + 'static,
    ) {
        self.push(id.into(), anchor, param.into(), tol, Bound::AtLeast, Check::Run(Box::new(f)));
    }

    pub fn skip(
        &mut self,
        id: impl Into<String>,
        anchor: &'static str,
        param: impl Into<String>,
        tol: f64,
        reason: impl Into<String>,
    ) {
        self.push(id.into(), anchor, param.into(), tol, Bound::AtMost, Check::Skip(reason.into()));
    }
}

/// Anchors each suite promises to cover.
pub fn required_anchors(suite: Suite) -> &'static [&'static str] {
    match suite {
        Suite::Povm => &[
            "POVM axioms",
            "Thm state-measure",
            "Thm Naimark",
            "Functional calculus",
            "Thm contraction POVM",
        ],
        Suite::GnsModular => &[
            "GNS",
            "Modular objects",
            "Half-Delta identity",
            "Lemma modular",
            "KMS",
            "Trace axioms",
            "Def modular time",
        ],
        Suite::Oscillator => &["Thm quantum-phase", "Commutator NF-FN", "Weyl failure", "Thm thermal-L", "KMS"],
        Suite::Relativistic => &[
            "Poisson semigroup",
            "Boundary isometry",
            "Thm thermal-D(1)",
            "Thm thermal-D(2)",
            "Thm thermal-D(3)",
        ],
        Suite::Weyl => &[
            "Weyl relations",
            "Weyl calculus",
            "NC integral",
            "Thm thermal-Dixmier(1)",
            "Thm thermal-Dixmier(2)",
            "Thm thermal-Dixmier(3)",
        ],
        Suite::All => &[],
    }
}

pub fn catalogue(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    let mut b = Builder::new(cfg);
    for s in cfg.suite.expand() {
        match s {
            Suite::Povm => povm::cases(&mut b),
            Suite::GnsModular => modular::cases(&mut b),
            Suite::Oscillator => oscillator::cases(&mut b),
            Suite::Relativistic => relativistic::cases(&mut b),
            Suite::Weyl => weyl::cases(&mut b),
            Suite::All => unreachable!("expand never yields All"),
        }
    }
    b.cases
}

/// `max(‖Σ E_i − I‖, worst distance of a spectrum from [0, 1])`.
pub(crate) fn povm_residual(p: &DiscretePovm) -> modtime::Result<f64> {
    let mut worst = p.total().distance(&Operator::identity(p.dim()))?;
    for e in p.effects() {
        worst = worst.max(effect_defect(e)?);
    }
    Ok(worst)
}

/// How far `E` is from satisfying `0 ≤ E ≤ I`, Hermitian defect included.
pub(crate) fn effect_defect(e: &Operator) -> modtime::Result<f64> {
    let herm = e.hermitian_defect()?;
    let s = HermitianSpectrum::new(&e.hermitian_part(), f64::INFINITY)?;
    Ok(herm.max(-s.min()).max(s.max() - 1.0).max(0.0))
}

/// Up to three disjoint arcs with random endpoints on the circle.
pub(crate) fn random_arcs(rng: &mut impl Rng) -> modtime::Result<RegionSet> {
    use std::f64::consts::PI;
    let k = rng.random_range(1..=3);
    let mut pts: Vec<f64> = (0..2 * k).map(|_| rng.random_range(-PI..PI)).collect();
    pts.sort_by(f64::total_cmp);
    let arcs: Vec<(f64, f64)> = pts.chunks(2).map(|w| (w[0], w[1])).collect();
    RegionSet::new(Domain::Circle, &arcs)
}

/// Largest residual; a NaN anywhere poisons the result instead of vanishing
/// under `f64::max`.
pub(crate) fn worst(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |acc: f64, x| if x.is_nan() || acc.is_nan() { f64::NAN } else { acc.max(x) })
}
