use serde::Serialize;

use super::config::{ExperimentConfig, ExperimentKind};
use crate::weights::MIX_VERSION;

/// Version of the report layout (tables, verdicts, header fields).
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width of table `{}`", self.name);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// A named pass/fail check tied to one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    /// Acceptance criterion identifier, e.g. `AC4`.
    pub criterion: String,
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    /// How `measured` is compared with `threshold`: `<=`, `>=` or `within`.
    pub relation: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn at_most(criterion: &str, name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Verdict {
            criterion: criterion.to_string(),
            name: name.into(),
            measured,
            threshold,
            relation: "<=".to_string(),
            passed: measured <= threshold,
            detail: String::new(),
        }
    }

    /// `|measured - target| <= tolerance`; `threshold` records the tolerance.
    pub fn within(
        criterion: &str,
        name: impl Into<String>,
        measured: f64,
        target: f64,
        tolerance: f64,
    ) -> Self {
        Verdict {
            criterion: criterion.to_string(),
            name: name.into(),
            measured,
            threshold: tolerance,
            relation: "within".to_string(),
            passed: (measured - target).abs() <= tolerance,
            detail: format!("target {target}"),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        if self.detail.is_empty() {
            self.detail = detail;
        } else {
            self.detail = format!("{}; {detail}", self.detail);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    pub mix_version: String,
    pub experiment: ExperimentKind,
    pub config: ExperimentConfig,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    /// Wall-clock seconds; only filled on request because it varies run to run.
    pub runtime_seconds: Option<f64>,
}

impl ExperimentReport {
    pub fn new(config: &ExperimentConfig) -> Self {
        ExperimentReport {
            schema_version: REPORT_SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            mix_version: MIX_VERSION.to_string(),
            experiment: config.experiment,
            config: config.clone(),
            tables: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            runtime_seconds: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}
