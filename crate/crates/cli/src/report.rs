//! Result tables, verdicts and their CSV/JSON serializations.

use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const SCHEMA: &str = "v1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Float(v) => Some(*v),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// 17 significant digits, `.` decimal point, round-trips every `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> usize {
        self.columns
            .iter()
            .position(|c| *c == name)
            .unwrap_or_else(|| panic!("no column {name}"))
    }

    /// Rows whose `case` column equals `case`.
    pub fn case_rows<'a>(&'a self, case: &'a str) -> impl Iterator<Item = &'a Vec<Cell>> + 'a {
        let c = self.column("case");
        self.rows
            .iter()
            .filter(move |r| matches!(&r[c], Cell::Text(s) if s == case))
    }

    pub fn values(&self, case: &str, column: &str) -> Vec<f64> {
        let j = self.column(column);
        self.case_rows(case).filter_map(|r| r[j].as_f64()).collect()
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (c, v) in self.columns.iter().zip(r) {
                        m.insert(c.to_string(), v.json());
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }
}

/// One pass/fail judgement against a tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub criterion: String,
    pub observed: f64,
    /// Human-readable rule, e.g. `<= 0.05`.
    pub tolerance: String,
    pub pass: bool,
}

impl Verdict {
    pub fn at_most(criterion: impl Into<String>, observed: f64, limit: f64) -> Self {
        Self {
            criterion: criterion.into(),
            observed,
            tolerance: format!("<= {limit}"),
            pass: observed <= limit,
        }
    }

    pub fn at_least(criterion: impl Into<String>, observed: f64, limit: f64) -> Self {
        Self {
            criterion: criterion.into(),
            observed,
            tolerance: format!(">= {limit}"),
            pass: observed >= limit,
        }
    }

    /// A boolean rule; `observed` is 1 for true.
    pub fn holds(criterion: impl Into<String>, ok: bool, rule: impl Into<String>) -> Self {
        Self {
            criterion: criterion.into(),
            observed: if ok { 1.0 } else { 0.0 },
            tolerance: rule.into(),
            pass: ok,
        }
    }
}

/// What an experiment hands back to the runner.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub verdicts: Vec<Verdict>,
    /// Resolved parameters (defaults filled in).
    pub parameters: Value,
    /// Resolved tolerances.
    pub tolerances: Value,
    /// Extra structured output (fits, series) for the JSON report.
    pub details: Value,
}

impl Outcome {
    /// True iff there is at least one row and one verdict and all pass.
    pub fn passed(&self) -> bool {
        !self.table.rows.is_empty() && !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.pass)
    }
}

/// A finished run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub experiment: &'static str,
    pub anchor: &'static str,
    pub model: Option<Value>,
    pub k_ladder: Vec<u32>,
    pub seed: Option<u64>,
    pub outcome: Outcome,
    pub wall_time_s: f64,
}

impl RunRecord {
    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }

    /// Deterministic CSV: no timestamps or timings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema={SCHEMA}");
        let _ = writeln!(out, "# experiment={}", self.experiment);
        let _ = writeln!(out, "# anchor={}", self.anchor);
        if let Some(m) = &self.model {
            let _ = writeln!(out, "# model={m}");
        }
        if !self.k_ladder.is_empty() {
            let ladder: Vec<String> = self.k_ladder.iter().map(|k| k.to_string()).collect();
            let _ = writeln!(out, "# k_ladder={}", ladder.join(" "));
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "# seed={s}");
        }
        let _ = writeln!(out, "# parameters={}", self.outcome.parameters);
        let _ = writeln!(out, "# tolerances={}", self.outcome.tolerances);
        let _ = writeln!(out, "{}", self.outcome.table.columns.join(","));
        for row in &self.outcome.table.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "experiment": self.experiment,
            "anchor": self.anchor,
            "model": self.model,
            "k_ladder": self.k_ladder,
            "seed": self.seed,
            "parameters": self.outcome.parameters,
            "tolerances": self.outcome.tolerances,
            "columns": self.outcome.table.columns,
            "rows": self.outcome.table.json_rows(),
            "verdicts": self.outcome.verdicts,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "details": self.outcome.details,
            "wall_time_s": self.wall_time_s,
        })
    }

    /// Writes `<dir>/<experiment>-<timestamp>.csv` and `.json`.
    pub fn write(&self, dir: &Path) -> std::io::Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%S%.6fZ").to_string();
        let stem = format!("{}-{}", self.experiment, stamp.replace('.', "_"));
        let csv = dir.join(format!("{stem}.csv"));
        let json = dir.join(format!("{stem}.json"));
        std::fs::write(&csv, self.to_csv())?;
        let mut text = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        text.push('\n');
        std::fs::write(&json, text)?;
        Ok((csv, json))
    }
}
