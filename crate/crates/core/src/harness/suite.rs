use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{IneqError, Result};
use crate::schwarz::Quantity;
use crate::space::FieldTag;

use super::evaluate::{evaluate, Evaluation};
use super::instance::{InstanceFile, InstanceSpec};
use super::sample::{sample, SampleMode};
use super::theorem::TheoremId;
use super::wire::{format_float, to_json_string};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Which per-instance records a suite keeps. Aggregates always cover every
/// instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordPolicy {
    All,
    /// Violations, counterexamples and skipped instances only.
    Failures,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub theorems: Vec<TheoremId>,
    /// Trials per (theorem, dimension, field) cell.
    pub trials: usize,
    pub dims: Vec<usize>,
    pub fields: Vec<FieldTag>,
    pub tol: f64,
    pub seed: u64,
    pub adversarial: bool,
    pub records: RecordPolicy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            theorems: TheoremId::all(),
            trials: 1000,
            dims: vec![1, 2, 3, 8],
            fields: vec![FieldTag::Real, FieldTag::Complex],
            tol: DEFAULT_TOL,
            seed: 0,
            adversarial: false,
            records: RecordPolicy::Failures,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    /// A check failed on an admissible instance.
    Violation,
    /// A check failed on an instance outside the hypothesis.
    Counterexample,
    /// Inadmissible instance on which every check still held.
    Inadmissible,
    /// The instance could not be evaluated.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub index: u64,
    pub theorem: TheoremId,
    pub field: FieldTag,
    pub dim: Option<usize>,
    pub seed: Option<u64>,
    pub outcome: Outcome,
    pub gap: Option<f64>,
    pub bound: Option<f64>,
    pub bounds: Vec<Quantity>,
    pub slack: Option<f64>,
    pub ratio: Option<f64>,
    pub admissible: Option<bool>,
    pub failed_checks: Vec<String>,
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSpec>,
}

impl Record {
    fn from_result(
        index: u64,
        spec: &InstanceSpec,
        result: &Result<Evaluation>,
        tol: f64,
    ) -> Record {
        let mut rec = Record {
            index,
            theorem: spec.theorem,
            field: spec.field,
            dim: spec.ambient_dim(),
            seed: spec.seed,
            outcome: Outcome::Skipped,
            gap: None,
            bound: None,
            bounds: Vec::new(),
            slack: None,
            ratio: None,
            admissible: None,
            failed_checks: Vec::new(),
            error: None,
            instance: None,
        };
        match result {
            Err(e) => rec.error = Some(e.to_string()),
            Ok(ev) => {
                let admissible = ev.admissible();
                let failed: Vec<String> = ev
                    .failed_checks(tol)
                    .into_iter()
                    .map(|c| c.label.clone())
                    .collect();
                rec.outcome = match (admissible, failed.is_empty()) {
                    (true, true) => Outcome::Pass,
                    (true, false) => Outcome::Violation,
                    (false, false) => Outcome::Counterexample,
                    (false, true) => Outcome::Inadmissible,
                };
                rec.gap = Some(ev.gap);
                rec.bound = Some(ev.bound);
                rec.bounds = ev.bounds.clone();
                rec.slack = Some(ev.slack());
                rec.ratio = ev.ratio();
                rec.admissible = Some(admissible);
                rec.failed_checks = failed;
            }
        }
        rec
    }

    fn is_failure(&self) -> bool {
        matches!(
            self.outcome,
            Outcome::Violation | Outcome::Counterexample | Outcome::Skipped
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: u64,
    pub admissible: u64,
    pub violations: u64,
    pub counterexamples: u64,
    pub skipped: u64,
    /// Smallest `bound − gap` over admissible instances.
    pub min_slack: Option<f64>,
    /// Largest `gap / bound` over admissible instances.
    pub max_ratio: Option<f64>,
}

impl Summary {
    fn empty() -> Self {
        Self {
            count: 0,
            admissible: 0,
            violations: 0,
            counterexamples: 0,
            skipped: 0,
            min_slack: None,
            max_ratio: None,
        }
    }

    fn add(&mut self, rec: &Record) {
        self.count += 1;
        match rec.outcome {
            Outcome::Violation => self.violations += 1,
            Outcome::Counterexample => self.counterexamples += 1,
            Outcome::Skipped => self.skipped += 1,
            _ => {}
        }
        if rec.admissible == Some(true) {
            self.admissible += 1;
            if let Some(s) = rec.slack {
                self.min_slack = Some(self.min_slack.map_or(s, |m| m.min(s)));
            }
            if let Some(r) = rec.ratio {
                self.max_ratio = Some(self.max_ratio.map_or(r, |m| m.max(r)));
            }
        }
    }

    fn merge(&mut self, other: &Summary) {
        self.count += other.count;
        self.admissible += other.admissible;
        self.violations += other.violations;
        self.counterexamples += other.counterexamples;
        self.skipped += other.skipped;
        self.min_slack = match (self.min_slack, other.min_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.max_ratio = match (self.max_ratio, other.max_ratio) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub theorem: TheoremId,
    #[serde(flatten)]
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub mode: String,
    pub version: String,
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub dims: Vec<usize>,
    pub fields: Vec<FieldTag>,
    pub theorems: Vec<TheoremId>,
    pub adversarial: bool,
    pub records: RecordPolicy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub metadata: Metadata,
    pub aggregate: Summary,
    pub per_theorem: Vec<TheoremSummary>,
    pub records: Vec<Record>,
}

impl SuiteReport {
    pub fn summary_for(&self, theorem: TheoremId) -> Option<&Summary> {
        self.per_theorem
            .iter()
            .find(|t| t.theorem == theorem)
            .map(|t| &t.summary)
    }

    /// 0 when no admissible instance violated a bound, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.aggregate.violations == 0 {
            0
        } else {
            1
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(IneqError::InvalidParameter(format!(
            "tolerance must be finite and nonnegative, got {tol}"
        )))
    }
}

fn version() -> String {
    format!("ineq {}", env!("CARGO_PKG_VERSION"))
}

struct Cell {
    theorem: TheoremId,
    dim: usize,
    field: FieldTag,
}

fn assemble(
    metadata: Metadata,
    theorems: &[TheoremId],
    parts: Vec<(TheoremId, Summary, Vec<Record>)>,
) -> SuiteReport {
    let mut aggregate = Summary::empty();
    let mut per_theorem: Vec<TheoremSummary> = theorems
        .iter()
        .map(|&t| TheoremSummary {
            theorem: t,
            summary: Summary::empty(),
        })
        .collect();
    let mut records = Vec::new();
    for (t, summary, recs) in parts {
        aggregate.merge(&summary);
        if let Some(slot) = per_theorem.iter_mut().find(|s| s.theorem == t) {
            slot.summary.merge(&summary);
        }
        records.extend(recs);
    }
    SuiteReport {
        metadata,
        aggregate,
        per_theorem,
        records,
    }
}

/// Samples and checks `trials` instances for every (theorem, dimension,
/// field) cell. Instance `i` uses seed `seed ^ i`, so the report does not
/// depend on how cells are scheduled across threads.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    check_tol(config.tol)?;
    if config.trials == 0 {
        return Err(IneqError::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    if let Some(&d) = config.dims.iter().find(|&&d| d == 0) {
        return Err(IneqError::InvalidParameter(format!(
            "invalid dimension {d}"
        )));
    }
    let mode = if config.adversarial {
        SampleMode::Adversarial
    } else {
        SampleMode::Admissible
    };
    let mut cells = Vec::new();
    for &theorem in &config.theorems {
        for &dim in &config.dims {
            for &field in &config.fields {
                cells.push(Cell {
                    theorem,
                    dim,
                    field,
                });
            }
        }
    }
    let trials = config.trials as u64;
    let parts: Vec<(TheoremId, Summary, Vec<Record>)> = cells
        .par_iter()
        .enumerate()
        .map(|(c, cell)| {
            let mut summary = Summary::empty();
            let mut kept = Vec::new();
            for t in 0..trials {
                let index = c as u64 * trials + t;
                let seed = config.seed ^ index;
                let (spec, result) = match sample(cell.theorem, cell.field, cell.dim, seed, mode) {
                    Ok(spec) => {
                        let result = evaluate(&spec);
                        (spec, result)
                    }
                    Err(e) => {
                        let mut spec = InstanceSpec::new(cell.theorem, cell.field);
                        spec.dim = Some(cell.dim);
                        spec.seed = Some(seed);
                        (spec, Err(e))
                    }
                };
                let mut rec = Record::from_result(index, &spec, &result, config.tol);
                summary.add(&rec);
                let keep = match config.records {
                    RecordPolicy::All => true,
                    RecordPolicy::Failures => rec.is_failure(),
                    RecordPolicy::None => false,
                };
                if keep {
                    rec.instance = Some(spec);
                    kept.push(rec);
                }
            }
            (cell.theorem, summary, kept)
        })
        .collect();
    let metadata = Metadata {
        mode: if config.adversarial {
            "adversarial"
        } else {
            "verify"
        }
        .to_string(),
        version: version(),
        tolerance: config.tol,
        seed: Some(config.seed),
        trials: Some(config.trials),
        dims: config.dims.clone(),
        fields: config.fields.clone(),
        theorems: config.theorems.clone(),
        adversarial: config.adversarial,
        records: config.records,
    };
    Ok(assemble(metadata, &config.theorems, parts))
}

/// Parses an instance document, reporting line and column on failure.
pub fn parse_instances(text: &str) -> Result<InstanceFile> {
    serde_json::from_str(text).map_err(|e| IneqError::Malformed(e.to_string()))
}

/// Evaluates every instance of a document. An instance that cannot be
/// evaluated (missing parameter, degenerate pair, ...) is an input error.
pub fn evaluate_instances(file: &InstanceFile, tol: f64) -> Result<SuiteReport> {
    check_tol(tol)?;
    let evaluated: Vec<Result<Evaluation>> = file.instances.par_iter().map(evaluate).collect();
    let mut theorems: Vec<TheoremId> = Vec::new();
    let mut parts = Vec::new();
    for (i, (spec, result)) in file.instances.iter().zip(&evaluated).enumerate() {
        if let Err(e) = result {
            return Err(IneqError::Malformed(format!(
                "instance {i} ({}): {e}",
                spec.theorem
            )));
        }
        if !theorems.contains(&spec.theorem) {
            theorems.push(spec.theorem);
        }
        let rec = Record::from_result(i as u64, spec, result, tol);
        let mut summary = Summary::empty();
        summary.add(&rec);
        parts.push((spec.theorem, summary, vec![rec]));
    }
    theorems.sort();
    let mut fields: Vec<FieldTag> = file.instances.iter().map(|s| s.field).collect();
    fields.sort_by_key(|f| *f == FieldTag::Complex);
    fields.dedup();
    let metadata = Metadata {
        mode: "eval".to_string(),
        version: version(),
        tolerance: tol,
        seed: None,
        trials: None,
        dims: Vec::new(),
        fields,
        theorems: theorems.clone(),
        adversarial: false,
        records: RecordPolicy::All,
    };
    Ok(assemble(metadata, &theorems, parts))
}

pub fn evaluate_file(path: &Path, tol: f64) -> Result<SuiteReport> {
    let text = fs::read_to_string(path)?;
    evaluate_instances(&parse_instances(&text)?, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = IneqError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(IneqError::InvalidParameter(format!(
                "unknown format `{other}`"
            ))),
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    index: u64,
    theorem: TheoremId,
    field: FieldTag,
    dim: Option<usize>,
    seed: Option<u64>,
    outcome: Outcome,
    gap: String,
    bound: String,
    slack: String,
    ratio: String,
    admissible: Option<bool>,
    failed_checks: String,
    error: String,
}

fn opt_float(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

pub fn report_to_string(report: &SuiteReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_json_string(report).map_err(|e| IneqError::Io(e.to_string())),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &report.records {
                w.serialize(CsvRow {
                    index: r.index,
                    theorem: r.theorem,
                    field: r.field,
                    dim: r.dim,
                    seed: r.seed,
                    outcome: r.outcome,
                    gap: opt_float(r.gap),
                    bound: opt_float(r.bound),
                    slack: opt_float(r.slack),
                    ratio: opt_float(r.ratio),
                    admissible: r.admissible,
                    failed_checks: r.failed_checks.join(";"),
                    error: r.error.clone().unwrap_or_default(),
                })
                .map_err(|e| IneqError::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| IneqError::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv writes UTF-8"))
        }
    }
}

pub fn emit_report(report: &SuiteReport, path: &Path, format: ReportFormat) -> Result<()> {
    fs::write(path, report_to_string(report, format)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_counts_only_violations() {
        let doc = r#"{"instances": [
            {"theorem": "thm2.1", "field": "real", "x": [2, 1], "a": [1, 0], "r": 0.1}
        ]}"#;
        let mut rep = evaluate_instances(&parse_instances(doc).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(rep.records[0].outcome, Outcome::Counterexample);
        assert_eq!(rep.exit_code(), 0);
        rep.aggregate.violations = 1;
        assert_eq!(rep.exit_code(), 1);
        assert!(evaluate_instances(&parse_instances(doc).unwrap(), -1e-9).is_err());
        assert!(evaluate_instances(&parse_instances(doc).unwrap(), f64::NAN).is_err());
    }

    #[test]
    fn worked_pair_example_passes() {
        let doc = r#"{"instances": [
            {"theorem": "thm2.2", "field": "real", "x": [2, 1], "y": [1, 1],
             "pair": {"lo": 1, "hi": 2}}
        ]}"#;
        let rep = evaluate_instances(&parse_instances(doc).unwrap(), DEFAULT_TOL).unwrap();
        let r = &rep.records[0];
        assert_eq!(r.outcome, Outcome::Pass);
        assert!((r.gap.unwrap() - (10f64.sqrt() - 3.0)).abs() < 1e-12);
        assert!((r.bound.unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn empty_document() {
        let rep = evaluate_instances(
            &parse_instances(r#"{"instances": []}"#).unwrap(),
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(rep.aggregate.count, 0);
        assert!(rep.records.is_empty());
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(
            parse_instances(r#"{"instances": [{"theorem": "thm9.1", "field": "real"}]}"#),
            Err(IneqError::Malformed(_))
        ));
        let err = parse_instances("{\"instances\": [\n{\"field\": \"real\"}]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let doc =
            parse_instances(r#"{"instances": [{"theorem": "thm2.1", "field": "real", "x": [1]}]}"#)
                .unwrap();
        let err = evaluate_instances(&doc, DEFAULT_TOL).unwrap_err();
        assert!(err.to_string().contains("`a`"), "{err}");
    }

    #[test]
    fn small_suite_is_clean_and_deterministic() {
        let config = SuiteConfig {
            trials: 20,
            dims: vec![1, 4],
            records: RecordPolicy::All,
            seed: 3,
            ..SuiteConfig::default()
        };
        let a = run_suite(&config).unwrap();
        assert_eq!(a.aggregate.count, 25 * 2 * 2 * 20);
        assert_eq!(a.aggregate.violations, 0);
        assert_eq!(a.aggregate.skipped, 0);
        let b = run_suite(&config).unwrap();
        assert_eq!(
            report_to_string(&a, ReportFormat::Json).unwrap(),
            report_to_string(&b, ReportFormat::Json).unwrap()
        );
    }
}
