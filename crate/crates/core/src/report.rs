//! Sweeps over graph universes and the reports they produce.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate;
use crate::error::Result;
use crate::forcing::Limits;
use crate::graph::Graph;
use crate::graph6;
use crate::verifier::{verify_graph_with, EqualityCase, Inputs, Status, TheoremId, VerdictRecord, VerifyOptions};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Universe {
    AllGraphs { max_order: usize, dedup: bool },
    BipartiteBalanced { max_side: usize },
}

impl Universe {
    /// The graphs of the universe that have a perfect matching, in a fixed order.
    pub fn graphs(&self) -> Result<Vec<Graph>> {
        match *self {
            Universe::AllGraphs { max_order, dedup } => enumerate::graphs_with_pm(max_order, dedup),
            Universe::BipartiteBalanced { max_side } => enumerate::bipartite_with_pm(max_side),
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::AllGraphs { max_order, dedup } => {
                write!(f, "all_graphs max_order={max_order}{}", if *dedup { " dedup" } else { "" })
            }
            Universe::BipartiteBalanced { max_side } => write!(f, "bipartite_balanced side={max_side}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub counterexample: usize,
    pub aborted: usize,
}

impl Counts {
    fn add(&mut self, status: Status) {
        match status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Inapplicable => self.inapplicable += 1,
            Status::Counterexample => self.counterexample += 1,
            Status::Aborted => self.aborted += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.inapplicable + self.counterexample + self.aborted
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub config: serde_json::Value,
}

/// A graph surfaced for inspection without any pass or fail meaning.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exploratory {
    pub graph_id: String,
    pub n: usize,
    pub f: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub environment: Environment,
    pub summary: BTreeMap<String, Counts>,
    pub totals: Counts,
    pub counterexample_found: bool,
    pub equality_mismatches: usize,
    /// Non-bipartite graphs with `f = n - 2`.
    pub exploratory: Vec<Exploratory>,
    pub records: Vec<VerdictRecord>,
}

impl Report {
    /// Builds the report, putting records in `(graph_id, theorem_id)` order.
    pub fn new(config: serde_json::Value, mut records: Vec<VerdictRecord>) -> Self {
        records.sort_by(|a, b| (&a.graph_id, a.theorem_id).cmp(&(&b.graph_id, b.theorem_id)));
        let mut summary: BTreeMap<String, Counts> = BTreeMap::new();
        let mut totals = Counts::default();
        for r in &records {
            summary.entry(r.theorem_id.to_string()).or_default().add(r.status);
            totals.add(r.status);
        }
        let mut exploratory: Vec<Exploratory> = records
            .iter()
            .filter(|r| r.theorem_id == TheoremId::Range && !r.inputs.bipartite && r.inputs.n >= 2)
            .filter_map(|r| {
                let f = r.inputs.f?;
                (f + 2 == r.inputs.n).then(|| Exploratory {
                    graph_id: r.graph_id.clone(),
                    n: r.inputs.n,
                    f,
                })
            })
            .collect();
        exploratory.dedup();
        Report {
            schema_version: SCHEMA_VERSION,
            environment: Environment {
                version: env!("CARGO_PKG_VERSION").to_string(),
                config,
            },
            counterexample_found: totals.counterexample > 0,
            equality_mismatches: records.iter().filter(|r| r.equality_case == EqualityCase::EqualityMismatch).count(),
            summary,
            totals,
            exploratory,
            records,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.totals.fail > 0
    }

    pub fn has_aborts(&self) -> bool {
        self.totals.aborted > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_COLUMNS)?;
        for r in &self.records {
            w.write_record(csv_row(r))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Columns of the CSV projection, one row per record.
pub const CSV_COLUMNS: [&str; 18] = [
    "theorem_id",
    "graph_id",
    "n",
    "e",
    "f",
    "F",
    "delta",
    "Af",
    "r",
    "connected",
    "bipartite",
    "split",
    "cograph",
    "bound",
    "observed",
    "status",
    "equality_case",
    "detail",
];

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_row(r: &VerdictRecord) -> [String; 18] {
    let i = &r.inputs;
    [
        r.theorem_id.to_string(),
        r.graph_id.clone(),
        i.n.to_string(),
        i.e.to_string(),
        opt(i.f),
        opt(i.big_f),
        i.delta.to_string(),
        opt(i.af),
        opt(i.r),
        i.connected.to_string(),
        i.bipartite.to_string(),
        i.split.to_string(),
        i.cograph.to_string(),
        r.bound.clone().unwrap_or_default(),
        opt(r.observed),
        r.status.as_str().to_string(),
        r.equality_case.as_str().to_string(),
        r.detail.clone().unwrap_or_default(),
    ]
}

/// Verifies every graph concurrently; the result does not depend on the
/// number of worker threads.
pub fn verify_graphs(graphs: &[Graph], limits: &Limits, options: VerifyOptions) -> Vec<VerdictRecord> {
    graphs.par_iter().flat_map_iter(|g| verify_graph_with(g, limits, options)).collect()
}

/// Verifies graph6 lines, turning unparsable lines into aborted records.
pub fn verify_lines(lines: &[String], limits: &Limits, options: VerifyOptions) -> Vec<VerdictRecord> {
    lines
        .par_iter()
        .flat_map_iter(|line| match graph6::decode(line) {
            Ok(g) => verify_graph_with(&g, limits, options),
            Err(e) => vec![parse_failure(line, &e.to_string())],
        })
        .collect()
}

pub fn parse_failure(line: &str, reason: &str) -> VerdictRecord {
    VerdictRecord {
        theorem_id: TheoremId::Parse,
        graph_id: line.to_string(),
        inputs: Inputs::default(),
        bound: None,
        observed: None,
        status: Status::Aborted,
        equality_case: EqualityCase::NotApplicable,
        detail: Some(reason.to_string()),
        reproduction: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn counts_match_records_and_order_is_fixed() {
        let graphs = Universe::AllGraphs {
            max_order: 4,
            dedup: true,
        }
        .graphs()
        .unwrap();
        let mut records = verify_graphs(&graphs, &Limits::default(), VerifyOptions::default());
        records.reverse();
        let report = Report::new(json!({"universe": "test"}), records.clone());
        assert_eq!(report.totals.total(), records.len());
        assert_eq!(report.summary.values().map(Counts::total).sum::<usize>(), records.len());
        let again = Report::new(json!({"universe": "test"}), verify_graphs(&graphs, &Limits::default(), VerifyOptions::default()));
        assert_eq!(report.to_json(), again.to_json());
        assert!(!report.has_failures());
    }

    #[test]
    fn malformed_lines_abort_without_stopping() {
        let lines = vec!["A_".to_string(), "not graph6!".to_string(), "Dhc".to_string()];
        let records = verify_lines(&lines, &Limits::default(), VerifyOptions::default());
        assert!(records.iter().any(|r| r.theorem_id == TheoremId::Parse && r.status == Status::Aborted));
        assert!(records.iter().any(|r| r.graph_id == "A_" && r.status == Status::Pass));
        assert!(records.iter().any(|r| r.graph_id == "Dhc" && r.theorem_id == TheoremId::PmExists));
    }

    #[test]
    fn jsonl_and_csv_round_trip() {
        let g = crate::families::make_h(3, 1).unwrap();
        let report = Report::new(json!({}), verify_graphs(&[g], &Limits::default(), VerifyOptions::default()));
        let mut buf = Vec::new();
        report.write_jsonl(&mut buf).unwrap();
        let parsed: Vec<VerdictRecord> =
            String::from_utf8(buf).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(parsed, report.records);
        let mut csv_buf = Vec::new();
        report.write_csv(&mut csv_buf).unwrap();
        let mut reader = csv::Reader::from_reader(csv_buf.as_slice());
        assert_eq!(reader.headers().unwrap().len(), CSV_COLUMNS.len());
        assert_eq!(reader.records().count(), report.records.len());
    }
}
