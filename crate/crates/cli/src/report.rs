//! Report shared by all commands.

use std::fmt::Write;

use qgidem::qg::AxiomCheck;
use qgidem::QgId;
use serde::Serialize;
use serde_json::Value;

use crate::Format;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input: String,
    pub qg: QgId,
    pub dim: usize,
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
    pub result: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, input: &str, qg: &qgidem::FiniteQuantumGroup) -> Self {
        Self {
            command,
            input: input.to_string(),
            qg: qg.id().clone(),
            dim: qg.dim(),
            passed: true,
            checks: Vec::new(),
            result: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn residual(&mut self, name: &str, value: f64, threshold: f64) {
        self.push(AxiomCheck::residual(name, value, threshold));
    }

    /// Integer mismatch counts pass only at zero.
    pub fn count(&mut self, name: &str, mismatches: usize) {
        self.push(AxiomCheck::residual(name, mismatches as f64, 0.0));
    }

    pub fn push(&mut self, check: AxiomCheck) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} (dim {}, id {})", self.command, self.input, self.dim, self.qg.0);
        for l in &self.lines {
            let _ = writeln!(s, "  {l}");
        }
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  [{mark}] {:<28} {:>11.3e}  (threshold {:.1e})", c.name, c.value, c.threshold);
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}
