//! Cross-checks the conditions against the exact oracle.
//!
//! A campaign turns a stream of work items into [`TrialRecord`]s. Items are
//! independent, run on a worker pool, and are merged back in input order, so
//! a report depends only on its [`CampaignConfig`].

mod campaign;
mod reference;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::codec::{emit_graph6, parse_graph6};
use crate::conditions::{ConditionId, Evaluator, Evidence, Outcome};
use crate::error::Error;
use crate::graph::Graph;
use crate::iso::{are_isomorphic, fingerprint};
use crate::oracle::{is_hamilton_connected_with, is_hamiltonian, is_traceable, OracleOptions};
use crate::spectra::{adjacency_spectral_radius, signless_laplacian_spectral_radius};

pub use campaign::{
    family_items, run_campaign, run_families, run_ingest, run_random, CampaignConfig, EdgeFloor,
    Filter, Mode, DEFAULT_ORACLE_CAP, MAX_REJECTS,
};
pub use reference::{reference_checks, reference_csv, ReferenceRow};

/// Exit status: no anomalies and no input errors.
pub const EXIT_CLEAN: i32 = 0;
/// Exit status: at least one anomaly.
pub const EXIT_ANOMALIES: i32 = 1;
/// Exit status: bad input or configuration.
pub const EXIT_INPUT: i32 = 2;

/// One graph to run, with what the audit expects of it.
#[derive(Clone, Debug)]
pub struct WorkItem {
    pub label: String,
    pub graph: Graph,
    /// Conditions that must report `ExceptionMember` for this graph.
    pub expect_exception: Vec<ConditionId>,
    /// Listed exception graphs must fail the oracle.
    pub expect_non_hc: bool,
}

impl WorkItem {
    pub fn plain(label: impl Into<String>, graph: Graph) -> WorkItem {
        WorkItem {
            label: label.into(),
            graph,
            expect_exception: Vec::new(),
            expect_non_hc: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub condition: ConditionId,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exception: Option<String>,
    pub evidence: BTreeMap<String, Evidence>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    /// graph6 of a colour-refined relabeling; equal ids mean isomorphic
    /// graphs.
    pub graph_id: String,
    /// graph6 in the labeling that was tested.
    pub graph6: String,
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub rho: Option<f64>,
    pub q: Option<f64>,
    /// `None` when the oracle timed out or failed.
    pub oracle: Option<bool>,
    pub failing_pair: Option<(usize, usize)>,
    pub verdicts: Vec<VerdictEntry>,
    pub anomalies: Vec<String>,
}

impl TrialRecord {
    pub fn verdict(&self, c: ConditionId) -> Option<&VerdictEntry> {
        self.verdicts.iter().find(|v| v.condition == c)
    }

    pub fn decode(&self) -> crate::Result<Graph> {
        parse_graph6(&self.graph6)
    }
}

/// Per-trial knobs shared by every mode.
#[derive(Clone, Debug)]
pub struct TrialOptions {
    pub conditions: Vec<ConditionId>,
    pub tol: f64,
    pub timeout: Option<Duration>,
}

/// Runs the oracle and the conditions on one item and compares them.
pub fn run_trial(item: &WorkItem, opts: &TrialOptions) -> TrialRecord {
    let g = &item.graph;
    let n = g.n();
    let mut anomalies = Vec::new();
    let graph6 = emit_graph6(g).unwrap_or_default();
    let spectral = |r: crate::Result<crate::spectra::SpectralResult>| r.ok().map(|s| s.value);

    let (oracle, failing_pair) = match is_hamilton_connected_with(
        g,
        &OracleOptions {
            witnesses: false,
            timeout: opts.timeout,
        },
    ) {
        Ok(v) => (Some(v.hamilton_connected), v.failing_pair),
        Err(Error::Timeout(_)) => {
            anomalies.push("timeout".to_string());
            (None, None)
        }
        Err(e) => {
            anomalies.push(format!("error:oracle:{e}"));
            (None, None)
        }
    };

    if let Some(hc) = oracle {
        chain_check(g, hc, &mut anomalies);
        if item.expect_non_hc && hc {
            anomalies.push("expected_non_hc".to_string());
        }
    }

    let wanted: BTreeSet<ConditionId> = opts
        .conditions
        .iter()
        .chain(&item.expect_exception)
        .copied()
        .collect();
    let ev = Evaluator::with_tol(g, opts.tol);
    let mut verdicts = Vec::new();
    for c in ConditionId::ALL.into_iter().filter(|c| wanted.contains(c)) {
        let v = match ev.evaluate(c) {
            Ok(v) => v,
            Err(e) => {
                anomalies.push(format!("error:{c}:{e}"));
                continue;
            }
        };
        match (v.outcome, oracle) {
            (Outcome::Certified, Some(false)) => anomalies.push(format!("unsound:{c}")),
            (Outcome::ExceptionMember, Some(true)) => {
                anomalies.push(format!("spurious_exception:{c}"))
            }
            _ => {}
        }
        if item.expect_exception.contains(&c) && v.outcome != Outcome::ExceptionMember {
            anomalies.push(format!("expected_exception:{c}:{}", v.outcome));
        }
        verdicts.push(VerdictEntry {
            condition: c,
            outcome: v.outcome,
            exception: v.exception,
            evidence: v.evidence,
        });
    }

    TrialRecord {
        graph_id: fingerprint(g),
        graph6,
        label: item.label.clone(),
        n,
        m: g.edge_count(),
        delta: if n == 0 { 0 } else { g.min_degree() },
        rho: spectral(adjacency_spectral_radius(g, opts.tol)),
        q: spectral(signless_laplacian_spectral_radius(g, opts.tol)),
        oracle,
        failing_pair,
        verdicts,
        anomalies,
    }
}

/// Hamilton-connected ⇒ Hamiltonian ⇒ traceable.
fn chain_check(g: &Graph, hc: bool, anomalies: &mut Vec<String>) {
    let (Ok(ham), Ok(tr)) = (is_hamiltonian(g), is_traceable(g)) else {
        return;
    };
    if (hc && !ham) || (ham && !tr) {
        anomalies.push("implication_chain".to_string());
    }
}

/// A line of input that could not be used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub records: Vec<TrialRecord>,
    pub input_errors: Vec<InputError>,
}

impl Report {
    pub fn anomaly_count(&self) -> usize {
        self.records.iter().map(|r| r.anomalies.len()).sum()
    }

    pub fn exit_code(&self) -> i32 {
        if self.anomaly_count() > 0 {
            EXIT_ANOMALIES
        } else if !self.input_errors.is_empty() {
            EXIT_INPUT
        } else {
            EXIT_CLEAN
        }
    }

    /// One JSON object per record, newline terminated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    /// `condition_id,trials,certified,exceptions,inconclusive,anomalies`,
    /// one row per condition that appears in the report.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("condition_id,trials,certified,exceptions,inconclusive,anomalies\n");
        for c in ConditionId::ALL {
            let mut counts = [0usize; 5];
            for r in &self.records {
                let Some(v) = r.verdict(c) else { continue };
                counts[0] += 1;
                match v.outcome {
                    Outcome::Certified => counts[1] += 1,
                    Outcome::ExceptionMember => counts[2] += 1,
                    Outcome::Inconclusive => counts[3] += 1,
                    _ => {}
                }
                counts[4] += r
                    .anomalies
                    .iter()
                    .filter(|a| a.split(':').nth(1) == Some(c.id()))
                    .count();
            }
            if counts[0] > 0 {
                let [t, cert, exc, inc, an] = counts;
                let _ = writeln!(out, "{c},{t},{cert},{exc},{inc},{an}");
            }
        }
        out
    }

    /// Pairs of record indices that share a `graph_id` without being
    /// isomorphic.
    pub fn fingerprint_collisions(&self) -> Vec<(usize, usize)> {
        let mut first: BTreeMap<&str, usize> = BTreeMap::new();
        let mut out = Vec::new();
        for (i, r) in self.records.iter().enumerate() {
            match first.get(r.graph_id.as_str()) {
                None => {
                    first.insert(&r.graph_id, i);
                }
                Some(&j) => {
                    let same = match (self.records[j].decode(), r.decode()) {
                        (Ok(a), Ok(b)) => are_isomorphic(&a, &b),
                        _ => false,
                    };
                    if !same {
                        out.push((j, i));
                    }
                }
            }
        }
        out
    }
}
