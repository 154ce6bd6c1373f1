//! Pass/fail report types shared by the validators and axiom suites.

use serde::Serialize;

use crate::exactlin::Matrix;

/// A single violated table law, with the witnessing tuple spelled out.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub context: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(context: impl Into<String>) -> Self {
        ValidationReport {
            context: context.into(),
            violations: Vec::new(),
        }
    }

    pub fn violation(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.into(),
        });
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// First differing entry of a failed matrix equation.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub suite: String,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn new(suite: impl Into<String>) -> Self {
        AxiomReport {
            suite: suite.into(),
            results: Vec::new(),
        }
    }

    /// Record an exact matrix equation, scanning for the first differing entry.
    pub fn equation(&mut self, name: impl Into<String>, lhs: &Matrix, rhs: &Matrix) {
        let witness = lhs.first_diff(rhs).map(|(row, col)| {
            let (l, r) = if (lhs.rows(), lhs.cols()) == (rhs.rows(), rhs.cols()) {
                (lhs.get(row, col).to_string(), rhs.get(row, col).to_string())
            } else {
                (
                    format!("{}x{}", lhs.rows(), lhs.cols()),
                    format!("{}x{}", rhs.rows(), rhs.cols()),
                )
            };
            Witness { row, col, lhs: l, rhs: r }
        });
        self.results.push(AxiomResult {
            name: name.into(),
            pass: witness.is_none(),
            witness,
        });
    }

    pub fn record(&mut self, name: impl Into<String>, pass: bool) {
        self.results.push(AxiomResult {
            name: name.into(),
            pass,
            witness: None,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn result(&self, name: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.results
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.name.as_str())
            .collect()
    }
}
