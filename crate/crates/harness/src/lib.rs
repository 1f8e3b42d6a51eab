//! Batch verification and refinement studies over the `modtime` models.
//!
//! [`run_suite`] executes a catalogue of residual checks, each tagged with a
//! stable anchor string naming the identity it exercises, and returns a report
//! whose body is reproducible from the configuration and seed alone.
//! [`convergence_study`] sweeps a size parameter and tabulates the error.

pub mod cases;
pub mod config;
pub mod report;
pub mod study;
pub mod suite;

pub use config::{ConfigError, Suite, SuiteConfig};
pub use report::{Bound, CaseRecord, ReportBody, Status, SuiteReport};
pub use study::{convergence_study, Monotone, StudyKind, StudyTable};
pub use suite::run_suite;
