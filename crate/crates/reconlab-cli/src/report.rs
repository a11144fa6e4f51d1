//! Versioned, machine-parseable verification reports.
//!
//! Parsers must ignore unknown fields so future schema versions can add
//! data without breaking old readers; serialization order is fixed by the
//! struct layout, so identical inputs produce byte-identical documents once
//! timing is zeroed.

use reconlab::{ClaimId, ClaimReport, EvalMode, QuantifiedReport, Verdict, Witness};
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Which graph a claim row talks about: the matched pair, or one side.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subject {
    Pair,
    G,
    H,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClaimEntry {
    pub claim: ClaimId,
    pub title: String,
    pub mode: EvalMode,
    pub subject: Subject,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl ClaimEntry {
    pub fn from_report(report: &ClaimReport, subject: Subject) -> Self {
        ClaimEntry {
            claim: report.claim,
            title: report.claim.title().to_string(),
            mode: report.mode,
            subject,
            verdict: report.verdict,
            witness: report.witness.clone(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    /// The graphs under test, as graph6 lines.
    pub inputs: Vec<String>,
    pub vertex_count: usize,
    /// Present in single-matching mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<ClaimEntry>>,
    /// Present in all-matchings mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantified: Option<QuantifiedReport>,
    /// Wall-clock milliseconds; zeroed under `--deterministic`.
    pub elapsed_ms: u64,
}

impl ReportDocument {
    pub fn new(inputs: Vec<String>, vertex_count: usize) -> Self {
        ReportDocument {
            schema_version: REPORT_SCHEMA_VERSION,
            tool: "reconlab".to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            vertex_count,
            matching: None,
            claims: None,
            quantified: None,
            elapsed_ms: 0,
        }
    }

    /// Any failing claim entry or any quantified row that does not hold for
    /// every matching.
    pub fn has_failure(&self) -> bool {
        let claim_failure = self
            .claims
            .as_ref()
            .is_some_and(|entries| entries.iter().any(|e| !e.passed()));
        let quantified_failure = self
            .quantified
            .as_ref()
            .is_some_and(|q| q.rows.iter().any(|row| !row.holds_for_all));
        claim_failure || quantified_failure
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Assembles the single-matching claim list: the pair claims under `sigma`,
/// then the matching-free claims of each side.
pub fn claim_entries(
    pair: &[ClaimReport],
    g_single: &[ClaimReport],
    h_single: &[ClaimReport],
) -> Vec<ClaimEntry> {
    let mut entries: Vec<ClaimEntry> =
        pair.iter().map(|r| ClaimEntry::from_report(r, Subject::Pair)).collect();
    entries.extend(g_single.iter().map(|r| ClaimEntry::from_report(r, Subject::G)));
    entries.extend(h_single.iter().map(|r| ClaimEntry::from_report(r, Subject::H)));
    entries
}

/// One human-readable line per claim row.
pub fn format_claim_line(entry: &ClaimEntry) -> String {
    let mode = match entry.mode {
        EvalMode::Standard => String::new(),
        EvalMode::ConnectedOnly => " [connected-only]".to_string(),
        EvalMode::AllGraphs => " [all-graphs]".to_string(),
    };
    let subject = match entry.subject {
        Subject::Pair => String::new(),
        Subject::G => " on G".to_string(),
        Subject::H => " on H".to_string(),
    };
    let verdict = match entry.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    };
    let witness = entry
        .witness
        .as_ref()
        .map(|w| format!("  witness: {}", format_witness(w)))
        .unwrap_or_default();
    format!(
        "{:<4} {}{}{}: {}{}",
        entry.claim.label(),
        entry.title,
        mode,
        subject,
        verdict,
        witness
    )
}

pub fn format_witness(w: &Witness) -> String {
    let vertices = w
        .vertices
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let length = w.length.map(|l| format!(" l={l}")).unwrap_or_default();
    format!(
        "vertices=({vertices}){length} left={} right={}",
        format_value(&w.left),
        format_value(&w.right)
    )
}

fn format_value(v: &reconlab::WitnessValue) -> String {
    match v {
        reconlab::WitnessValue::Bool(b) => b.to_string(),
        reconlab::WitnessValue::Count(c) => c.to_string(),
        reconlab::WitnessValue::Sequence(s) => format!("{s:?}"),
    }
}
