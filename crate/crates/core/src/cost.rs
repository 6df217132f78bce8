//! Fidelity estimates as products of per-gate success probabilities.

use crate::circuit::{QuditCircuit, QuditGate};
use crate::error::{Error, Result};
use crate::mapping::Mapping;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const DEFAULT_E1: f64 = 0.001;
pub const DEFAULT_E2: f64 = 0.01;

/// Per-gate error rates.
///
/// Override keys are `"local"` and `"ctrl"`, optionally suffixed with the dimension of the
/// qudit the gate acts on (`"ctrl:4"`). The dimension-specific key wins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorModel {
    pub e1: f64,
    pub e2: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, f64>,
}

impl Default for ErrorModel {
    fn default() -> Self {
        ErrorModel {
            e1: DEFAULT_E1,
            e2: DEFAULT_E2,
            overrides: BTreeMap::new(),
        }
    }
}

fn check_rate(path: &str, e: f64) -> Result<()> {
    if (0.0..1.0).contains(&e) {
        Ok(())
    } else {
        Err(Error::schema(
            path,
            format!("error rate {e} outside [0, 1)"),
        ))
    }
}

impl ErrorModel {
    pub fn new(e1: f64, e2: f64) -> Result<Self> {
        let m = ErrorModel {
            e1,
            e2,
            overrides: BTreeMap::new(),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn noiseless() -> Self {
        ErrorModel {
            e1: 0.0,
            e2: 0.0,
            overrides: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_rate("e1", self.e1)?;
        check_rate("e2", self.e2)?;
        for (key, &e) in &self.overrides {
            let path = format!("overrides.{key}");
            let (kind, dim) = match key.split_once(':') {
                Some((k, d)) => (k, Some(d)),
                None => (key.as_str(), None),
            };
            if kind != "local" && kind != "ctrl" {
                return Err(Error::schema(
                    path,
                    "unknown gate kind (expected local or ctrl)",
                ));
            }
            if let Some(d) = dim {
                if !d.parse::<usize>().is_ok_and(|d| d >= 2) {
                    return Err(Error::schema(
                        path,
                        "dimension suffix must be an integer >= 2",
                    ));
                }
            }
            check_rate(&path, e)?;
        }
        Ok(())
    }

    /// Error rate for one gate on a register with the given dimensions.
    pub fn rate(&self, gate: &QuditGate, dims: &[usize]) -> f64 {
        let (kind, base) = match gate {
            QuditGate::Local { .. } => ("local", self.e1),
            QuditGate::Controlled { .. } => ("ctrl", self.e2),
        };
        if self.overrides.is_empty() {
            return base;
        }
        let d = dims[gate.target()];
        self.overrides
            .get(&format!("{kind}:{d}"))
            .or_else(|| self.overrides.get(kind))
            .copied()
            .unwrap_or(base)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityEstimate {
    pub value: f64,
    pub single_qudit_gates: usize,
    pub two_qudit_gates: usize,
}

/// `prod_i (1 - e_i)` over the gates in circuit order.
pub fn estimate_fidelity(c: &QuditCircuit, em: &ErrorModel) -> FidelityEstimate {
    let value = c
        .gates
        .iter()
        .fold(1.0, |f, g| f * (1.0 - em.rate(g, &c.dims)));
    let (single, two) = count_gates(c);
    FidelityEstimate {
        value,
        single_qudit_gates: single,
        two_qudit_gates: two,
    }
}

/// (single-qudit, two-qudit) gate tallies.
pub fn count_gates(c: &QuditCircuit) -> (usize, usize) {
    let two = c.gates.iter().filter(|g| g.is_two_qudit()).count();
    (c.gates.len() - two, two)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranspileReport {
    pub mapping_opt: Vec<Vec<usize>>,
    pub two_qudit_gates: usize,
    pub single_qudit_gates: usize,
    pub baseline_two_qubit_gates: Option<usize>,
    pub fidelity_opt: f64,
    pub fidelity_trivial: Option<f64>,
    #[serde(default)]
    pub fidelity_ratio: Option<f64>,
}

pub fn compare(
    mapping: &Mapping,
    opt: &FidelityEstimate,
    trivial: Option<&FidelityEstimate>,
    baseline_two_qubit_gates: Option<usize>,
) -> TranspileReport {
    TranspileReport {
        mapping_opt: mapping.groups().to_vec(),
        two_qudit_gates: opt.two_qudit_gates,
        single_qudit_gates: opt.single_qudit_gates,
        baseline_two_qubit_gates,
        fidelity_opt: opt.value,
        fidelity_trivial: trivial.map(|t| t.value),
        fidelity_ratio: trivial.map(|t| opt.value / t.value),
    }
}
