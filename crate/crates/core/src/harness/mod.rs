//! Randomized instance generation, suite execution and file-based
//! evaluation with JSON/CSV reports.

pub mod evaluate;
pub mod instance;
pub mod sample;
pub mod suite;
pub mod theorem;
pub mod wire;

pub use evaluate::{evaluate, Check, Evaluation};
pub use instance::{InstanceFile, InstanceSpec, ScalarList};
pub use sample::{sample, sample_admissible, sample_adversarial, SampleMode};
pub use suite::{
    emit_report, evaluate_file, evaluate_instances, parse_instances, report_to_string, run_suite,
    Metadata, Outcome, Record, RecordPolicy, ReportFormat, SuiteConfig, SuiteReport, Summary,
    TheoremSummary, DEFAULT_TOL,
};
pub use theorem::{Restriction, Shape, TheoremId};
