//! Case records, suite reports and their JSON/CSV encodings.

use std::io::Write;

use serde::Serialize;

/// Report layout version; bump when fields change meaning.
pub const SCHEMA: &str = "modtime-report/1";

/// Direction of a check: most cases bound a residual from above, negative
/// controls bound a defect from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    AtLeast,
}

impl Bound {
    pub fn holds(self, value: f64, tol: f64) -> bool {
        match self {
            Bound::AtMost => value <= tol,
            Bound::AtLeast => value >= tol,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub case: String,
    pub anchor: String,
    pub param: String,
    /// `None` when the case was skipped or errored before producing a value.
    pub residual: Option<f64>,
    pub tol: f64,
    pub bound: Bound,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn pass_column(&self) -> &'static str {
        match self.status {
            Status::Pass => "true",
            Status::Fail => "false",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Everything that must be reproducible from the configuration alone.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportBody {
    pub schema: &'static str,
    pub suite: String,
    pub config: serde_json::Value,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    /// Anchors the selected suites promise but no case carried.
    pub missing_anchors: Vec<String>,
}

/// Run-dependent metadata kept apart from the body.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stamp {
    pub version: &'static str,
    pub wall_time_s: f64,
    pub timestamp_unix_s: u64,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    #[serde(flatten)]
    pub body: ReportBody,
    pub stamp: Stamp,
}

impl ReportBody {
    pub fn new(suite: String, config: serde_json::Value, cases: Vec<CaseRecord>, missing_anchors: Vec<String>) -> Self {
        let mut summary = Summary { total: cases.len(), ..Summary::default() };
        for c in &cases {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        ReportBody { schema: SCHEMA, suite, config, cases, summary, missing_anchors }
    }

    /// All checks passed and the anchor self-check is clean. Skipped cases
    /// do not count against the run.
    pub fn ok(&self) -> bool {
        self.summary.failed == 0 && self.missing_anchors.is_empty()
    }

    /// Canonical encoding used for determinism comparisons.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report body serializes")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["case", "anchor", "param", "residual", "tol", "pass"])?;
        for c in &self.cases {
            let residual = c.residual.map(|r| format!("{r:e}")).unwrap_or_default();
            w.write_record([&c.case, &c.anchor, &c.param, &residual, &format!("{:e}", c.tol), c.pass_column()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory csv");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(status: Status, residual: Option<f64>) -> CaseRecord {
        CaseRecord {
            case: "x/y".into(),
            anchor: "GNS".into(),
            param: "d=2;k=3".into(),
            residual,
            tol: 1e-12,
            bound: Bound::AtMost,
            status,
            note: None,
        }
    }

    #[test]
    fn bounds() {
        assert!(Bound::AtMost.holds(0.0, 0.0) && !Bound::AtMost.holds(1e-3, 1e-4));
        assert!(Bound::AtLeast.holds(0.2, 0.1) && !Bound::AtLeast.holds(0.05, 0.1));
        assert!(!Bound::AtMost.holds(f64::NAN, 1.0));
    }

    #[test]
    fn summary_and_csv() {
        let body = ReportBody::new(
            "all".into(),
            serde_json::json!({}),
            vec![record(Status::Pass, Some(1e-15)), record(Status::Skipped, None), record(Status::Fail, Some(2.0))],
            vec![],
        );
        assert_eq!(body.summary, Summary { total: 3, passed: 1, failed: 1, skipped: 1 });
        assert!(!body.ok());
        let csv = body.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "case,anchor,param,residual,tol,pass");
        assert_eq!(lines[1], "x/y,GNS,d=2;k=3,1e-15,1e-12,true");
        assert_eq!(lines[2], "x/y,GNS,d=2;k=3,,1e-12,skipped");
        assert!(lines[3].ends_with(",false"));
    }

    #[test]
    fn body_excludes_stamp() {
        let body = ReportBody::new("povm".into(), serde_json::json!({"seed": 7}), vec![], vec![]);
        assert!(body.ok());
        let full = SuiteReport {
            body: body.clone(),
            stamp: Stamp { version: "0", wall_time_s: 1.5, timestamp_unix_s: 3, threads: 1 },
        };
        assert!(!body.to_json().contains("wall_time_s"));
        assert!(full.to_json().contains("wall_time_s") && full.to_json().contains("\"schema\""));
    }
}
