//! Per-order tallies and their CSV / JSON forms.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{FilterReason, OutcomeTag, VerifyOutcome};
use crate::filter::apply_filter;
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::heuristics::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Outcome counts for one order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub total: u64,
    /// First violated criterion, (i) to (vii).
    pub filtered: [u64; 7],
    pub not_biconnected: u64,
    /// Heuristic pass that succeeded, in RC, RLC, LD, HDF order.
    pub heuristic: [u64; 4],
    pub race_rlc: u64,
    pub exact: u64,
    pub counterexamples: u64,
    pub aborted: u64,
}

impl Tally {
    pub fn merge(&mut self, other: &Tally) {
        self.total += other.total;
        for k in 0..7 {
            self.filtered[k] += other.filtered[k];
        }
        self.not_biconnected += other.not_biconnected;
        for k in 0..4 {
            self.heuristic[k] += other.heuristic[k];
        }
        self.race_rlc += other.race_rlc;
        self.exact += other.exact;
        self.counterexamples += other.counterexamples;
        self.aborted += other.aborted;
    }

    /// Sum of all outcome columns; equals `total` for a consistent tally.
    pub fn outcome_sum(&self) -> u64 {
        self.filtered.iter().sum::<u64>()
            + self.not_biconnected
            + self.heuristic.iter().sum::<u64>()
            + self.race_rlc
            + self.exact
            + self.counterexamples
            + self.aborted
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub rows: BTreeMap<usize, Tally>,
    /// graph6 strings of counterexamples, in stream order.
    pub counterexamples: Vec<String>,
    /// graph6 strings of graphs left undecided within the limits.
    pub aborted: Vec<String>,
    /// Skipped input lines with the reason.
    pub rejected: Vec<(usize, String)>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn record(&mut self, g: &Graph, outcome: &VerifyOutcome) {
        let row = self.rows.entry(g.order()).or_default();
        row.total += 1;
        match &outcome.tag {
            OutcomeTag::FilteredNotMinimal(FilterReason::Criterion(c)) => row.filtered[*c as usize] += 1,
            OutcomeTag::FilteredNotMinimal(FilterReason::NotBiconnected) => row.not_biconnected += 1,
            OutcomeTag::HeuristicVerified(s) => row.heuristic[strategy_column(*s)] += 1,
            OutcomeTag::RaceRlcVerified => row.race_rlc += 1,
            OutcomeTag::ExactVerified => row.exact += 1,
            OutcomeTag::Counterexample(_) => {
                row.counterexamples += 1;
                self.counterexamples.push(to_graph6(g));
            }
            OutcomeTag::Aborted => {
                row.aborted += 1;
                self.aborted.push(to_graph6(g));
            }
        }
    }

    pub fn merge(&mut self, other: &RunReport) {
        for (n, t) in &other.rows {
            self.rows.entry(*n).or_default().merge(t);
        }
        self.counterexamples.extend(other.counterexamples.iter().cloned());
        self.aborted.extend(other.aborted.iter().cloned());
        self.rejected.extend(other.rejected.iter().cloned());
        self.wall_time += other.wall_time;
    }

    pub fn has_counterexamples(&self) -> bool {
        self.rows.values().any(|t| t.counterexamples > 0)
    }

    pub fn has_aborted(&self) -> bool {
        self.rows.values().any(|t| t.aborted > 0)
    }
}

fn strategy_column(s: Strategy) -> usize {
    Strategy::ALL.iter().position(|&x| x == s).expect("listed strategy")
}

pub const CSV_HEADER: &str = "n,total,filtered_i,filtered_ii,filtered_iii,filtered_iv,filtered_v,filtered_vi,filtered_vii,\
not_biconnected,heur_rc,heur_rlc,heur_ld,heur_hdf,race_rlc,exact,counterexamples";

/// One CSV row per order under [`CSV_HEADER`], or the whole report as JSON.
/// Aborted counts and graph lists appear only in the JSON form.
pub fn emit_report(r: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for (n, t) in &r.rows {
                let fields: Vec<u64> = [*n as u64, t.total]
                    .into_iter()
                    .chain(t.filtered)
                    .chain([t.not_biconnected])
                    .chain(t.heuristic)
                    .chain([t.race_rlc, t.exact, t.counterexamples])
                    .collect();
                let line: Vec<String> = fields.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
            out
        }
    }
}

/// Filter-stage counts for one order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterTally {
    pub total: u64,
    pub filtered: [u64; 7],
    pub not_biconnected: u64,
    pub passed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub rows: BTreeMap<usize, FilterTally>,
}

impl FilterReport {
    pub fn record(&mut self, g: &Graph) {
        let row = self.rows.entry(g.order()).or_default();
        row.total += 1;
        let verdict = apply_filter(g);
        match (verdict.biconnected, verdict.first_violated) {
            (false, _) => row.not_biconnected += 1,
            (true, Some(c)) => row.filtered[c as usize] += 1,
            (true, None) => row.passed += 1,
        }
    }
}

pub fn emit_filter_report(r: &FilterReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        ReportFormat::Csv => {
            let mut out = String::from(
                "n,total,filtered_i,filtered_ii,filtered_iii,filtered_iv,filtered_v,filtered_vi,filtered_vii,not_biconnected,passed\n",
            );
            for (n, t) in &r.rows {
                let fields: Vec<String> = [*n as u64, t.total]
                    .into_iter()
                    .chain(t.filtered)
                    .chain([t.not_biconnected, t.passed])
                    .map(|v| v.to_string())
                    .collect();
                let _ = writeln!(out, "{}", fields.join(","));
            }
            out
        }
    }
}
