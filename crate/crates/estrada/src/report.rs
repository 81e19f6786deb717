//! Report serialization.
//!
//! CSV and JSON output is byte-stable for identical inputs; the table format
//! is meant for people and may change.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use estrada_core::{BoundId, Diameter, InvariantSet};

use crate::harness::{
    BoundTally, CorpusDescriptor, GapQuantiles, GraphRow, HarnessError, RowSink, Summary, Violation,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!(
                "unknown format `{other}` (expected table, csv or json)"
            )),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Table => "table",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

fn sink_err(e: impl fmt::Display) -> HarnessError {
    HarnessError::Sink(e.to_string())
}

fn diam_text(d: Diameter) -> String {
    match d {
        Diameter::Finite(k) => k.to_string(),
        Diameter::Infinite => "inf".into(),
    }
}

fn diam_json(d: Diameter) -> Value {
    match d {
        Diameter::Finite(k) => json!(k),
        Diameter::Infinite => json!("inf"),
    }
}

fn opt_text(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Column names of the verification CSV.
pub fn csv_header() -> Vec<String> {
    let mut cols: Vec<String> = [
        "graph6",
        "n",
        "m",
        "delta_max",
        "delta_min",
        "diam",
        "triangles",
        "randic",
        "randic_half",
        "ee",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for id in BoundId::ALL {
        cols.push(format!("{id}_applicable"));
        cols.push(format!("{id}_value"));
        cols.push(format!("{id}_gap"));
    }
    cols
}

fn invariant_fields(graph6: &str, inv: &InvariantSet, ee: f64) -> Vec<String> {
    vec![
        graph6.to_string(),
        inv.n.to_string(),
        inv.m.to_string(),
        inv.max_degree.to_string(),
        inv.min_degree.to_string(),
        diam_text(inv.diameter),
        inv.triangles.to_string(),
        inv.randic.to_string(),
        inv.randic_half.to_string(),
        ee.to_string(),
    ]
}

pub fn csv_record(row: &GraphRow) -> Vec<String> {
    let mut rec = invariant_fields(&row.graph6, &row.invariants, row.ee);
    for r in &row.bounds {
        rec.push(r.applicable.to_string());
        rec.push(opt_text(r.bound_value));
        rec.push(opt_text(r.gap));
    }
    rec
}

fn invariants_json(inv: &InvariantSet) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(inv.n));
    m.insert("m".into(), json!(inv.m));
    m.insert("delta_max".into(), json!(inv.max_degree));
    m.insert("delta_min".into(), json!(inv.min_degree));
    m.insert("diam".into(), diam_json(inv.diameter));
    m.insert("triangles".into(), json!(inv.triangles));
    m.insert("randic".into(), json!(inv.randic));
    m.insert("randic_half".into(), json!(inv.randic_half));
    m
}

pub fn row_json(row: &GraphRow) -> Value {
    let mut m = Map::new();
    m.insert("graph6".into(), json!(row.graph6));
    m.extend(invariants_json(&row.invariants));
    m.insert("ee".into(), json!(row.ee));
    m.insert("energy".into(), json!(row.energy));
    m.insert("lambda1".into(), json!(row.lambda1));
    let bounds: Vec<Value> = row
        .bounds
        .iter()
        .map(|r| {
            json!({
                "id": r.id.as_str(),
                "applicable": r.applicable,
                "value": r.bound_value,
                "gap": r.gap,
                "equality": r.equality_detected,
                "equality_class": r.equality_class_match,
            })
        })
        .collect();
    m.insert("bounds".into(), Value::Array(bounds));
    let lemmas: Vec<Value> = row
        .lemmas
        .iter()
        .map(|l| {
            json!({
                "id": l.id.as_str(),
                "bound": l.bound,
                "slack": l.slack,
                "equality": l.equality,
            })
        })
        .collect();
    m.insert("lemmas".into(), Value::Array(lemmas));
    let probes: Vec<Value> = row
        .probes
        .iter()
        .map(|(id, gap)| json!({ "id": id.as_str(), "gap": gap }))
        .collect();
    m.insert("probes".into(), Value::Array(probes));
    Value::Object(m)
}

/// The `compute` subcommand's per-graph object.
pub fn compute_json(graph6: &str, inv: &InvariantSet, ee: f64, energy: f64, lambda1: f64) -> Value {
    let mut m = Map::new();
    m.insert("graph6".into(), json!(graph6));
    m.extend(invariants_json(inv));
    m.insert("ee".into(), json!(ee));
    m.insert("energy".into(), json!(energy));
    m.insert("lambda1".into(), json!(lambda1));
    Value::Object(m)
}

pub fn compute_csv_header() -> Vec<String> {
    let mut h = csv_header();
    h.truncate(10);
    h.push("energy".into());
    h.push("lambda1".into());
    h
}

pub fn compute_csv_record(
    graph6: &str,
    inv: &InvariantSet,
    ee: f64,
    energy: f64,
    lambda1: f64,
) -> Vec<String> {
    let mut rec = invariant_fields(graph6, inv, ee);
    rec.push(energy.to_string());
    rec.push(lambda1.to_string());
    rec
}

pub fn corpus_json(c: &CorpusDescriptor) -> Value {
    json!({
        "source": c.source,
        "filters": c.filters,
        "seed": c.seed,
        "tolerance": c.tolerance,
        "params": c.params,
    })
}

fn quantiles_json(q: &GapQuantiles) -> Value {
    json!({ "min": q.min, "p01": q.p01, "p50": q.p50, "p99": q.p99, "max": q.max })
}

fn tally_json(id: BoundId, t: &BoundTally) -> Value {
    let mut v = json!({
        "id": id.as_str(),
        "applicable": t.applicable,
        "held": t.held,
        "held_strictly": t.held_strictly,
        "equality": t.equality,
        "violations": t.violations,
        "min_gap": t.min_gap,
        "max_gap": t.max_gap,
        "probed": t.probed,
        "probe_held": t.probe_held,
    });
    if let Some(q) = &t.quantiles {
        v["quantiles"] = quantiles_json(q);
    }
    v
}

pub fn summary_json(s: &Summary) -> Value {
    let bounds: Vec<Value> = BoundId::ALL
        .iter()
        .zip(&s.bounds)
        .map(|(&id, t)| tally_json(id, t))
        .collect();
    json!({
        "graphs": s.graphs,
        "violations": s.violations,
        "lemma_checks": s.lemma_checks,
        "lemma_violations": s.lemma_violations,
        "bounds": bounds,
    })
}

pub fn violations_json(v: &[Violation]) -> Value {
    Value::Array(
        v.iter()
            .map(|v| json!({ "graph6": v.graph6, "subject": v.subject, "gap": v.gap }))
            .collect(),
    )
}

/// Writes one CSV record per row after a header line.
pub struct CsvSink<W: Write> {
    out: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(w: W) -> Self {
        CsvSink {
            out: csv::Writer::from_writer(w),
        }
    }
}

impl<W: Write> RowSink for CsvSink<W> {
    fn begin(&mut self, _corpus: &CorpusDescriptor) -> Result<(), HarnessError> {
        self.out.write_record(csv_header()).map_err(sink_err)
    }

    fn accept(&mut self, row: &GraphRow) -> Result<(), HarnessError> {
        self.out.write_record(csv_record(row)).map_err(sink_err)
    }

    fn finish(&mut self, _: &Summary, _: &[Violation]) -> Result<(), HarnessError> {
        self.out.flush().map_err(sink_err)
    }
}

/// Streams `{"version","corpus","rows":[...],"summary","violations"}`
/// without holding the rows in memory.
pub struct JsonSink<W: Write> {
    out: W,
    first: bool,
}

impl<W: Write> JsonSink<W> {
    pub fn new(out: W) -> Self {
        JsonSink { out, first: true }
    }
}

impl<W: Write> RowSink for JsonSink<W> {
    fn begin(&mut self, corpus: &CorpusDescriptor) -> Result<(), HarnessError> {
        write!(
            self.out,
            "{{\"version\":\"{SCHEMA_VERSION}\",\"corpus\":{},\"rows\":[",
            corpus_json(corpus)
        )
        .map_err(sink_err)
    }

    fn accept(&mut self, row: &GraphRow) -> Result<(), HarnessError> {
        if !self.first {
            self.out.write_all(b",").map_err(sink_err)?;
        }
        self.first = false;
        serde_json::to_writer(&mut self.out, &row_json(row)).map_err(sink_err)
    }

    fn finish(&mut self, summary: &Summary, violations: &[Violation]) -> Result<(), HarnessError> {
        writeln!(
            self.out,
            "],\"summary\":{},\"violations\":{}}}",
            summary_json(summary),
            violations_json(violations)
        )
        .map_err(sink_err)?;
        self.out.flush().map_err(sink_err)
    }
}

/// Aligned plain-text output: one line per graph listing the applicable
/// bound gaps (`*` marks equality), followed by the per-bound summary.
pub struct TableSink<W: Write> {
    out: W,
    tol: f64,
}

impl<W: Write> TableSink<W> {
    pub fn new(out: W) -> Self {
        TableSink {
            out,
            tol: estrada_core::DEFAULT_TOLERANCE,
        }
    }
}

impl<W: Write> RowSink for TableSink<W> {
    fn begin(&mut self, corpus: &CorpusDescriptor) -> Result<(), HarnessError> {
        self.tol = corpus.tolerance;
        let params: Vec<String> = corpus
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(
            self.out,
            "corpus: {} {} {}",
            corpus.source,
            corpus.filters,
            params.join(" ")
        )
        .map_err(sink_err)?;
        writeln!(
            self.out,
            "{:<16} {:>3} {:>4} {:>16}  gaps (* = equality, ! = violated)",
            "graph6", "n", "m", "ee"
        )
        .map_err(sink_err)
    }

    fn accept(&mut self, row: &GraphRow) -> Result<(), HarnessError> {
        let gaps: Vec<String> = row
            .bounds
            .iter()
            .filter_map(|r| {
                let gap = r.gap?;
                let mark = if r.violated(self.tol) {
                    "!"
                } else if r.equality_detected {
                    "*"
                } else {
                    ""
                };
                Some(format!("{}={gap:.6}{mark}", r.id))
            })
            .collect();
        writeln!(
            self.out,
            "{:<16} {:>3} {:>4} {:>16.9}  {}",
            row.graph6,
            row.invariants.n,
            row.invariants.m,
            row.ee,
            gaps.join(" ")
        )
        .map_err(sink_err)
    }

    fn finish(&mut self, summary: &Summary, violations: &[Violation]) -> Result<(), HarnessError> {
        writeln!(self.out).map_err(sink_err)?;
        writeln!(
            self.out,
            "{:<4} {:>10} {:>10} {:>10} {:>10} {:>10} {:>14} {:>14}",
            "id", "applicable", "held", "strict", "equality", "violated", "min gap", "max gap"
        )
        .map_err(sink_err)?;
        for (id, t) in BoundId::ALL.iter().zip(&summary.bounds) {
            let fmt_gap =
                |g: Option<f64>| g.map(|g| format!("{g:.6e}")).unwrap_or_else(|| "-".into());
            writeln!(
                self.out,
                "{:<4} {:>10} {:>10} {:>10} {:>10} {:>10} {:>14} {:>14}",
                id.as_str(),
                t.applicable,
                t.held,
                t.held_strictly,
                t.equality,
                t.violations,
                fmt_gap(t.min_gap),
                fmt_gap(t.max_gap)
            )
            .map_err(sink_err)?;
        }
        writeln!(
            self.out,
            "graphs: {}  lemma checks: {}  violations: {}",
            summary.graphs,
            summary.lemma_checks,
            violations.len()
        )
        .map_err(sink_err)?;
        self.out.flush().map_err(sink_err)
    }
}

/// A sink for the chosen format.
pub fn sink_for<'a, W: Write + 'a>(format: OutputFormat, w: W) -> Box<dyn RowSink + 'a> {
    match format {
        OutputFormat::Table => Box::new(TableSink::new(w)),
        OutputFormat::Csv => Box::new(CsvSink::new(w)),
        OutputFormat::Json => Box::new(JsonSink::new(w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{exhaustive_verify, Mode, Settings};

    fn run(format: OutputFormat) -> String {
        let mut buf = Vec::new();
        {
            let mut sink = sink_for(format, &mut buf);
            exhaustive_verify(3, Mode::All, Settings::default(), sink.as_mut()).unwrap();
        }
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_shape() {
        let text = run(OutputFormat::Csv);
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let header = rdr.headers().unwrap().clone();
        assert_eq!(header.len(), 10 + 3 * 14);
        assert_eq!(&header[0], "graph6");
        assert_eq!(&header[10], "G1_applicable");
        let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 1 + 2 + 8);
        // K_1 has no edges, so G1 is inapplicable
        assert_eq!(&rows[0][0], "@");
        assert_eq!(&rows[0][10], "false");
        assert_eq!(&rows[0][11], "");
        // edgeless K_2 has infinite diameter
        assert_eq!(&rows[1][5], "inf");
    }

    #[test]
    fn json_parses_back() {
        let text = run(OutputFormat::Json);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["version"], "1");
        assert_eq!(v["rows"].as_array().unwrap().len(), 11);
        assert_eq!(v["summary"]["graphs"], 11);
        assert_eq!(v["summary"]["bounds"].as_array().unwrap().len(), 14);
        assert_eq!(v["violations"], json!([]));
        assert_eq!(v["corpus"]["source"], "exhaustive");
    }

    #[test]
    fn table_has_summary() {
        let text = run(OutputFormat::Table);
        assert!(text.contains("G5"));
        assert!(text.contains("graphs: 11"));
    }

    #[test]
    fn format_names() {
        for f in [OutputFormat::Table, OutputFormat::Csv, OutputFormat::Json] {
            assert_eq!(f.to_string().parse::<OutputFormat>(), Ok(f));
        }
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
