//! The report document every command prints.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

/// One result line.
#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Item {
    /// A computed value with nothing to check.
    pub fn value(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            path: None,
            value: Some(value),
            residual: None,
            tolerance: None,
            pass: true,
            details: None,
        }
    }

    /// A residual checked against a tolerance.
    pub fn check(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            path: None,
            value: None,
            residual: Some(residual),
            tolerance: Some(tolerance),
            pass: residual <= tolerance,
            details: None,
        }
    }

    pub fn with_path(mut self, path: &str) -> Self {
        self.path = Some(path.to_string());
        self
    }

    pub fn with_value(mut self, value: f64) -> Self {
        self.value = Some(value);
        self
    }

    pub fn with_details<T: Serialize>(mut self, details: &T) -> Self {
        self.details = Some(serde_json::to_value(details).expect("serializable"));
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub items: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    /// Command-line arguments after the program name.
    pub command: Vec<String>,
    pub seed: u64,
    pub field: String,
    pub items: Vec<Item>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(command: Vec<String>, seed: u64, field: String, items: Vec<Item>) -> Self {
        let passed = items.iter().filter(|i| i.pass).count();
        let summary = Summary {
            items: items.len(),
            passed,
            failed: items.len() - passed,
            pass: passed == items.len(),
        };
        Self {
            command,
            seed,
            field,
            items,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "pfactor {}  (seed {}, field {})", self.command.join(" "), self.seed, self.field).unwrap();
        for item in &self.items {
            let mut line = format!("{} {}", if item.pass { "PASS" } else { "FAIL" }, item.name);
            if let Some(p) = &item.path {
                write!(line, " [{p}]").unwrap();
            }
            if let Some(v) = item.value {
                write!(line, " value={v:.15}").unwrap();
            }
            if let (Some(r), Some(t)) = (item.residual, item.tolerance) {
                write!(line, " residual={r:.3e} tol={t:.1e}").unwrap();
            }
            writeln!(out, "{line}").unwrap();
        }
        let s = &self.summary;
        writeln!(out, "{} of {} passed", s.passed, s.items).unwrap();
        out
    }
}
