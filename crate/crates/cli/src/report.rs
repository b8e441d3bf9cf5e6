//! Result documents and their text, JSON and CSV forms.
//!
//! Every value that reaches a report has been recounted with the quadratic
//! counter (or, above [`ORACLE_EDGE_LIMIT`] edges, with a fresh sweep).

use std::fmt::Write as _;

use oslcm_core::{crossing_profile, CountMode, CrossingProfile, TwoLayerNetwork, YOrder};
use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

/// Instances above this size are recounted with the sweep instead of the
/// quadratic counter.
pub const ORACLE_EDGE_LIMIT: usize = 20_000;

pub fn recount(network: &TwoLayerNetwork, order: &YOrder) -> Result<CrossingProfile, CliError> {
    let mode = if network.edge_count() <= ORACLE_EDGE_LIMIT {
        CountMode::Oracle
    } else {
        CountMode::Fast
    };
    Ok(crossing_profile(network, order, mode)?)
}

/// Recounts `order` and fails if the result differs from `claimed`.
pub fn verify_value(
    network: &TwoLayerNetwork,
    order: &YOrder,
    claimed: u64,
    what: &str,
) -> Result<CrossingProfile, CliError> {
    let profile = recount(network, order)?;
    let actual = profile.local_crossing_number();
    if actual != claimed {
        return Err(CliError::Verification(format!(
            "{what} reported {claimed} but the order has local crossing number {actual}"
        )));
    }
    Ok(profile)
}

/// heuristic / exact, with 0/0 read as 1.
pub fn ratio(heuristic: u64, exact: u64) -> Option<f64> {
    match (heuristic, exact) {
        (0, 0) => Some(1.0),
        (_, 0) => None,
        (h, e) => Some(h as f64 / e as f64),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultReport {
    pub algorithm: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<&'static str>,
    pub order: Vec<u32>,
    pub local_crossing_number: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proven_optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_explored: Option<u64>,
    pub elapsed_ms: f64,
    pub instance_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub x_count: u32,
    pub y_count: u32,
    pub edge_count: usize,
    pub reports: Vec<ResultReport>,
    /// Heuristic over exact, present when both ran and the exact value is proven.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecideReport {
    pub k: u64,
    pub answer: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_value: Option<u64>,
    pub elapsed_ms: f64,
    pub instance_digest: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub task: &'static str,
    pub edges: usize,
    pub best_ms: f64,
    pub mean_ms: f64,
    pub runs: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn report_text(report: &ResultReport, text: &mut String) {
    let _ = writeln!(text, "algorithm: {}", report.algorithm);
    if let Some(rule) = report.rule {
        let _ = writeln!(text, "rule: {rule}");
    }
    if let Some(tie_break) = report.tie_break {
        let _ = writeln!(text, "tie_break: {tie_break}");
    }
    let _ = writeln!(text, "order: {}", join(&report.order));
    let _ = writeln!(
        text,
        "local_crossing_number: {}",
        report.local_crossing_number
    );
    if let Some(proven) = report.proven_optimal {
        let _ = writeln!(text, "proven_optimal: {proven}");
    }
    if let Some(nodes) = report.nodes_explored {
        let _ = writeln!(text, "nodes_explored: {nodes}");
    }
    let _ = writeln!(text, "elapsed_ms: {:.3}", report.elapsed_ms);
    let _ = writeln!(text, "instance_digest: {}", report.instance_digest);
    if let Some(profile) = &report.profile {
        let _ = writeln!(text, "profile: {}", join(profile));
    }
}

const REPORT_CSV_HEADER: &str =
    "algorithm,rule,tie_break,local_crossing_number,proven_optimal,nodes_explored,elapsed_ms,instance_digest,order";

fn report_csv(report: &ResultReport, text: &mut String) {
    let _ = writeln!(
        text,
        "{},{},{},{},{},{},{:.3},{},{}",
        report.algorithm,
        report.rule.unwrap_or(""),
        report.tie_break.unwrap_or(""),
        report.local_crossing_number,
        report
            .proven_optimal
            .map(|p| p.to_string())
            .unwrap_or_default(),
        report
            .nodes_explored
            .map(|n| n.to_string())
            .unwrap_or_default(),
        report.elapsed_ms,
        report.instance_digest,
        join(&report.order),
    );
}

impl SolveReport {
    pub fn render(&self, format: Format) -> String {
        let mut text = String::new();
        match format {
            Format::Json => return json(self),
            Format::Text => {
                let _ = writeln!(
                    text,
                    "instance: {} fixed, {} free, {} edges",
                    self.x_count, self.y_count, self.edge_count
                );
                for report in &self.reports {
                    text.push('\n');
                    report_text(report, &mut text);
                }
                if let Some(ratio) = self.ratio {
                    let _ = writeln!(text, "\nratio: {ratio:.3}");
                }
            }
            Format::Csv => {
                let _ = writeln!(text, "{REPORT_CSV_HEADER}");
                for report in &self.reports {
                    report_csv(report, &mut text);
                }
            }
        }
        text
    }
}

impl DecideReport {
    pub fn render(&self, format: Format) -> String {
        let witness = self.witness.as_deref().map(join).unwrap_or_default();
        let mut text = String::new();
        match format {
            Format::Json => return json(self),
            Format::Text => {
                let _ = writeln!(text, "k: {}", self.k);
                let _ = writeln!(text, "answer: {}", self.answer);
                if self.witness.is_some() {
                    let _ = writeln!(text, "witness: {witness}");
                }
                if let Some(value) = self.witness_value {
                    let _ = writeln!(text, "witness_value: {value}");
                }
                let _ = writeln!(text, "elapsed_ms: {:.3}", self.elapsed_ms);
                let _ = writeln!(text, "instance_digest: {}", self.instance_digest);
            }
            Format::Csv => {
                let _ = writeln!(
                    text,
                    "k,answer,witness_value,elapsed_ms,instance_digest,witness"
                );
                let _ = writeln!(
                    text,
                    "{},{},{},{:.3},{},{}",
                    self.k,
                    self.answer,
                    self.witness_value
                        .map(|v| v.to_string())
                        .unwrap_or_default(),
                    self.elapsed_ms,
                    self.instance_digest,
                    witness
                );
            }
        }
        text
    }
}

pub fn render_bench(rows: &[BenchRow], format: Format) -> String {
    let mut text = String::new();
    match format {
        Format::Json => return json(&rows),
        Format::Text => {
            for row in rows {
                let _ = write!(
                    text,
                    "{:<14} edges={} best={:.3}ms mean={:.3}ms runs={}",
                    row.task, row.edges, row.best_ms, row.mean_ms, row.runs
                );
                if let Some(value) = row.value {
                    let _ = write!(text, " value={value}");
                }
                text.push('\n');
            }
        }
        Format::Csv => {
            let _ = writeln!(text, "task,edges,best_ms,mean_ms,runs,value");
            for row in rows {
                let _ = writeln!(
                    text,
                    "{},{},{:.3},{:.3},{},{}",
                    row.task,
                    row.edges,
                    row.best_ms,
                    row.mean_ms,
                    row.runs,
                    row.value.map(|v| v.to_string()).unwrap_or_default()
                );
            }
        }
    }
    text
}
