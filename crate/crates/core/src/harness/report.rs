use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::construction::lemmas::SweepOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subdivide: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub quantification: String,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
    pub elapsed_ms: u64,
}

impl ClaimRecord {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Quantities measured on one graph.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub node_count: usize,
    pub edge_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilization_round: Option<usize>,
    /// Minimal distinguishing depth of the witness pair.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinguishing_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guaranteed_equal_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub status: Status,
    pub parameters: Parameters,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_id_convention: Option<String>,
    pub claims: Vec<ClaimRecord>,
    /// Measured quantities keyed by graph name (`base`, `subdivided`, `joined`, ...).
    pub measured: Vec<(String, Measured)>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(command: &str, parameters: Parameters) -> Self {
        VerificationReport {
            command: command.to_string(),
            status: Status::Pass,
            parameters,
            node_id_convention: None,
            claims: Vec::new(),
            measured: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Runs `check`, times it and records the outcome.
    pub fn claim(&mut self, id: &str, quantification: impl Into<String>, check: impl FnOnce() -> SweepOutcome) -> &ClaimRecord {
        let start = Instant::now();
        let outcome = check();
        let elapsed_ms = start.elapsed().as_millis() as u64;
        self.push(id, quantification, outcome, elapsed_ms)
    }

    pub fn push(&mut self, id: &str, quantification: impl Into<String>, outcome: SweepOutcome, elapsed_ms: u64) -> &ClaimRecord {
        if outcome.violation_count > 0 {
            self.status = Status::Fail;
        }
        self.claims.push(ClaimRecord {
            id: id.to_string(),
            quantification: quantification.into(),
            checked: outcome.checked,
            violation_count: outcome.violation_count,
            violations: outcome.violations,
            elapsed_ms,
        });
        self.claims.last().unwrap()
    }

    pub fn measured(&self, name: &str) -> Option<&Measured> {
        self.measured.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn claim_record(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("report serializes");
        out.push(b'\n');
        out
    }

    /// JSON with every timing zeroed, for reproducibility comparisons.
    pub fn to_json_untimed(&self) -> Vec<u8> {
        let mut copy = self.clone();
        for c in &mut copy.claims {
            c.elapsed_ms = 0;
        }
        copy.to_json()
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!(
                "[{}] {:<32} checked {:>10}  violations {}  ({})\n",
                if c.passed() { "PASS" } else { "FAIL" },
                c.id,
                c.checked,
                c.violation_count,
                c.quantification
            ));
            for v in &c.violations {
                out.push_str(&format!("       {v}\n"));
            }
        }
        for (name, m) in &self.measured {
            out.push_str(&format!("{name}: {}\n", serde_json::to_string(m).expect("serializes")));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out.push_str(&format!("{}: {}\n", self.command, self.status));
        out
    }
}

/// Single yes/no check.
pub fn single(ok: bool, message: impl FnOnce() -> String) -> SweepOutcome {
    SweepOutcome {
        checked: 1,
        violation_count: u64::from(!ok),
        violations: if ok { Vec::new() } else { vec![message()] },
    }
}
