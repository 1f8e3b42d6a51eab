//! Runs the catalogue in parallel and assembles the report.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use modtime::Error;
use rayon::prelude::*;

use crate::cases::{catalogue, required_anchors, CaseSpec, Check};
use crate::config::{ConfigError, SuiteConfig};
use crate::report::{Bound, CaseRecord, ReportBody, Stamp, Status, SuiteReport};

/// FNV-1a of the case id folded into the run seed.
pub fn case_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn is_guard(e: &Error) -> bool {
    matches!(e, Error::Guard(_) | Error::IllConditioned { .. })
}

fn run_case(spec: &CaseSpec, cfg: &SuiteConfig) -> CaseRecord {
    let tol = match (spec.bound, cfg.tol) {
        (Bound::AtMost, Some(t)) => t,
        _ => spec.tol,
    };
    let mut rec = CaseRecord {
        case: spec.id.clone(),
        anchor: spec.anchor.to_string(),
        param: spec.param.clone(),
        residual: None,
        tol,
        bound: spec.bound,
        status: Status::Skipped,
        note: None,
    };
    let f = match &spec.check {
        Check::Skip(reason) => {
            rec.note = Some(reason.clone());
            return rec;
        }
        Check::Run(f) => f,
    };
    let seed = case_seed(cfg.seed, &spec.id);
    match catch_unwind(AssertUnwindSafe(|| f(seed))) {
        Ok(Ok(r)) => {
            rec.residual = Some(r);
            rec.status = if spec.bound.holds(r, tol) { Status::Pass } else { Status::Fail };
        }
        Ok(Err(e)) if is_guard(&e) => rec.note = Some(e.to_string()),
        Ok(Err(e)) => {
            rec.status = Status::Fail;
            rec.note = Some(e.to_string());
        }
        Err(_) => {
            rec.status = Status::Fail;
            rec.note = Some("case panicked".into());
        }
    }
    rec
}

/// Anchors promised by the selected suites that no case carries.
pub fn missing_anchors(cfg: &SuiteConfig, cases: &[CaseRecord]) -> Vec<String> {
    let present: BTreeSet<&str> = cases.iter().map(|c| c.anchor.as_str()).collect();
    let mut missing: Vec<String> = cfg
        .suite
        .expand()
        .into_iter()
        .flat_map(|s| required_anchors(s).iter())
        .filter(|a| !present.contains(*a))
        .map(|a| a.to_string())
        .collect();
    missing.sort();
    missing.dedup();
    missing
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let specs: Vec<CaseSpec> = catalogue(cfg)
        .into_iter()
        .filter(|s| cfg.only.as_deref().is_none_or(|p| s.id.starts_with(p)))
        .collect();
    if specs.is_empty() {
        return Err(ConfigError(format!("no case matches the filter {:?}", cfg.only.as_deref().unwrap_or(""))));
    }
    // collect() keeps catalogue order whatever the scheduling
    let cases: Vec<CaseRecord> = specs.par_iter().map(|s| run_case(s, cfg)).collect();
    // a filtered run covers only part of the catalogue by design
    let missing = if cfg.only.is_some() { Vec::new() } else { missing_anchors(cfg, &cases) };
    let config = serde_json::to_value(cfg).expect("config serializes");
    let body = ReportBody::new(cfg.suite.to_string(), config, cases, missing);
    let stamp = Stamp {
        version: env!("CARGO_PKG_VERSION"),
        wall_time_s: start.elapsed().as_secs_f64(),
        timestamp_unix_s: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        threads: rayon::current_num_threads(),
    };
    Ok(SuiteReport { body, stamp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Suite;

    #[test]
    fn seeds_differ_per_case_and_run() {
        assert_ne!(case_seed(7, "a"), case_seed(7, "b"));
        assert_ne!(case_seed(7, "a"), case_seed(8, "a"));
        assert_eq!(case_seed(7, "a"), case_seed(7, "a"));
    }

    #[test]
    fn catalogue_ids_are_unique_and_anchored() {
        let specs = catalogue(&SuiteConfig::default());
        let ids: BTreeSet<&str> = specs.iter().map(|s| s.id.as_str()).collect();
        assert_eq!(ids.len(), specs.len());
        for s in Suite::MODULES {
            let cfg = SuiteConfig::for_suite(s);
            let anchors: BTreeSet<&str> = catalogue(&cfg).iter().map(|c| c.anchor).collect();
            for a in required_anchors(s) {
                assert!(anchors.contains(a), "{s}: {a}");
            }
        }
    }

    #[test]
    fn self_check_reports_missing_anchor() {
        let cfg = SuiteConfig::for_suite(Suite::Weyl);
        let rec = CaseRecord {
            case: "weyl/x".into(),
            anchor: "Weyl relations".into(),
            param: String::new(),
            residual: Some(0.0),
            tol: 1.0,
            bound: Bound::AtMost,
            status: Status::Pass,
            note: None,
        };
        let missing = missing_anchors(&cfg, &[rec]);
        assert!(missing.contains(&"NC integral".to_string()));
        assert!(!missing.contains(&"Weyl relations".to_string()));
    }

    #[test]
    fn guard_violation_is_skipped() {
        let cfg = SuiteConfig { d: Some(30), only: Some("oscillator/thermal-L-b1-".into()), ..SuiteConfig::for_suite(Suite::Oscillator) };
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.body.summary.skipped, 10);
        assert!(report.body.cases.iter().all(|c| c.note.as_deref().is_some_and(|n| n.contains("guard"))));
        assert!(report.body.ok());
    }

    #[test]
    fn tolerance_override_fails_upper_bounds() {
        let cfg = SuiteConfig { tol: Some(1e-30), only: Some("oscillator/weyl".into()), ..SuiteConfig::for_suite(Suite::Oscillator) };
        let report = run_suite(&cfg).unwrap();
        let by_id = |id: &str| report.body.cases.iter().find(|c| c.case.contains(id)).unwrap().clone();
        assert_eq!(by_id("weyl-failure-frozen").status, Status::Fail);
        // the negative control keeps its own lower bound
        assert_eq!(by_id("weyl-failure-d8").status, Status::Pass);
        assert!(!report.body.ok());
    }

    #[test]
    fn empty_filter_is_a_config_error() {
        let cfg = SuiteConfig { only: Some("nothing/".into()), ..SuiteConfig::default() };
        assert!(run_suite(&cfg).is_err());
    }
}
