//! Lowering of qubit circuits onto a qudit register under a fixed mapping.
//!
//! Single-qubit gates become one local gate on the carrier qudit. Two-qubit gates between
//! co-resident qubits stay local; otherwise they become one level-controlled gate.
//! Multi-controlled X is lowered with a flag ladder through the free levels of the
//! control carriers, costing `2K - 1` two-qudit gates for `K` carriers.

pub mod baseline;
pub mod search;

use crate::circuit::{QubitCircuit, QubitGate, QuditCircuit, QuditGate};
use crate::error::{Error, Result};
use crate::mapping::{LevelBudget, Mapping};
use crate::matrix::{Matrix, ONE, ZERO};
use std::collections::BTreeMap;

pub use baseline::{baseline_qubit_lowering, BaselineCircuit};
pub use search::{evaluate_mapping, select_mapping, SearchOutcome, DEFAULT_SEARCH_LIMIT};

/// Lowering state for one (circuit, mapping) pair.
#[derive(Debug, Clone)]
pub struct LoweringContext<'a> {
    mapping: &'a Mapping,
    budget: LevelBudget,
    gates: Vec<QuditGate>,
}

impl<'a> LoweringContext<'a> {
    pub fn new(mapping: &'a Mapping) -> Self {
        LoweringContext {
            mapping,
            budget: mapping.level_budget(),
            gates: Vec::new(),
        }
    }

    pub fn mapping(&self) -> &Mapping {
        self.mapping
    }

    pub fn budget(&self) -> &LevelBudget {
        &self.budget
    }

    /// Lowers one gate and appends the result.
    pub fn lower(&mut self, gate: &QubitGate) -> Result<()> {
        match gate {
            QubitGate::Cnot { control, target } => {
                let g = lower_cnot(*control, *target, self.mapping);
                self.gates.push(g);
            }
            QubitGate::Cz { control, target } => {
                let g = lower_cz(*control, *target, self.mapping);
                self.gates.push(g);
            }
            QubitGate::Mcx { controls, target } => {
                let seq = lower_mcx(controls, *target, self.mapping)?;
                self.gates.extend(seq);
            }
            single => {
                let (_, qubit, matrix) = single.as_controlled();
                self.gates
                    .push(lower_single_qubit_gate(qubit, &matrix, self.mapping));
            }
        }
        Ok(())
    }

    pub fn finish(self) -> QuditCircuit {
        QuditCircuit::with_gates(self.mapping.dims().to_vec(), self.gates)
    }
}

/// Local matrix on a `d`-level qudit holding `used` encoded levels that maps encoded level
/// `a` to `image(a)` and leaves free levels alone.
fn level_permutation(d: usize, used: usize, image: impl Fn(usize) -> usize) -> Matrix {
    let perm: Vec<usize> = (0..d)
        .map(|l| if l < used { image(l) } else { l })
        .collect();
    Matrix::permutation(&perm)
}

/// Diagonal matrix with `phase(a)` on encoded levels and 1 on free levels.
fn level_diagonal(d: usize, used: usize, phase: impl Fn(usize) -> f64) -> Matrix {
    let entries: Vec<_> = (0..d)
        .map(|l| if l < used { ONE * phase(l) } else { ONE })
        .collect();
    Matrix::diagonal(&entries)
}

/// Encoded levels of qudit `j` in which every bit of `mask` is set.
fn levels_with_bits(mapping: &Mapping, j: usize, mask: usize) -> Vec<usize> {
    (0..mapping.used_levels(j))
        .filter(|l| l & mask == mask)
        .collect()
}

/// Embeds a 2x2 unitary acting on `qubit` into its carrier qudit.
pub fn lower_single_qubit_gate(qubit: usize, u: &Matrix, mapping: &Mapping) -> QuditGate {
    let slot = mapping.slot(qubit);
    let d = mapping.dims()[slot.qudit];
    let used = mapping.used_levels(slot.qudit);
    let mut m = Matrix::identity(d);
    for a in 0..used {
        for b in 0..used {
            m[(a, b)] = if a & !slot.bit == b & !slot.bit {
                u[((a & slot.bit != 0) as usize, (b & slot.bit != 0) as usize)]
            } else {
                ZERO
            };
        }
    }
    QuditGate::Local {
        qudit: slot.qudit,
        matrix: m,
    }
}

/// Zero two-qudit gates when both qubits share a qudit, one otherwise.
pub fn lower_cnot(control: usize, target: usize, mapping: &Mapping) -> QuditGate {
    let c = mapping.slot(control);
    let t = mapping.slot(target);
    let d = mapping.dims()[t.qudit];
    let used = mapping.used_levels(t.qudit);
    if c.qudit == t.qudit {
        return QuditGate::Local {
            qudit: t.qudit,
            matrix: level_permutation(d, used, |l| if l & c.bit != 0 { l ^ t.bit } else { l }),
        };
    }
    QuditGate::Controlled {
        control: c.qudit,
        levels: levels_with_bits(mapping, c.qudit, c.bit),
        target: t.qudit,
        matrix: level_permutation(d, used, |l| l ^ t.bit),
    }
}

pub fn lower_cz(control: usize, target: usize, mapping: &Mapping) -> QuditGate {
    let c = mapping.slot(control);
    let t = mapping.slot(target);
    let d = mapping.dims()[t.qudit];
    let used = mapping.used_levels(t.qudit);
    if c.qudit == t.qudit {
        let both = c.bit | t.bit;
        return QuditGate::Local {
            qudit: t.qudit,
            matrix: level_diagonal(d, used, |l| if l & both == both { -1.0 } else { 1.0 }),
        };
    }
    QuditGate::Controlled {
        control: c.qudit,
        levels: levels_with_bits(mapping, c.qudit, c.bit),
        target: t.qudit,
        matrix: level_diagonal(d, used, |l| if l & t.bit != 0 { -1.0 } else { 1.0 }),
    }
}

/// A qudit hosting controls of one multi-controlled gate.
#[derive(Debug, Clone)]
struct Carrier {
    qudit: usize,
    /// Encoded levels in which all resident controls are 1.
    condition: Vec<usize>,
    free: Vec<usize>,
}

impl Carrier {
    /// Cannot hold one flag per condition level, so it must open the ladder.
    fn is_deficient(&self) -> bool {
        self.free.len() < self.condition.len()
    }
}

/// Lowers a multi-controlled X with the flag ladder.
///
/// Controls sharing the target's qudit are folded into the final gate. The remaining
/// carriers are chained: the first carrier's own condition levels act as its flag; every
/// later carrier swaps its condition levels onto free levels when the previous flag is
/// raised. The last flag controls the flip of the target bit, after which the swaps are
/// undone in reverse order. At most one carrier may lack enough free levels, and it goes
/// first.
pub fn lower_mcx(controls: &[usize], target: usize, mapping: &Mapping) -> Result<Vec<QuditGate>> {
    let t = mapping.slot(target);
    let budget = mapping.level_budget();

    let mut masks: BTreeMap<usize, usize> = BTreeMap::new();
    for &q in controls {
        let s = mapping.slot(q);
        *masks.entry(s.qudit).or_default() |= s.bit;
    }
    let folded = masks.remove(&t.qudit).unwrap_or(0);

    let mut carriers: Vec<Carrier> = masks
        .into_iter()
        .map(|(qudit, mask)| Carrier {
            qudit,
            condition: levels_with_bits(mapping, qudit, mask),
            free: budget.free[qudit].clone(),
        })
        .collect();
    // Stable sort: deficient carrier first, the rest by qudit index.
    carriers.sort_by_key(|c| !c.is_deficient());
    let deficient: Vec<usize> = carriers
        .iter()
        .filter(|c| c.is_deficient())
        .map(|c| c.qudit)
        .collect();
    if deficient.len() > 1 {
        return Err(Error::InsufficientFreeLevels {
            gate: 0,
            reason: format!("carrier qudits {deficient:?} each lack free levels for a flag"),
        });
    }

    let d_t = mapping.dims()[t.qudit];
    let used_t = mapping.used_levels(t.qudit);
    let flip = level_permutation(d_t, used_t, |l| {
        if l & folded == folded {
            l ^ t.bit
        } else {
            l
        }
    });

    let Some((first, rest)) = carriers.split_first() else {
        return Ok(vec![QuditGate::Local {
            qudit: t.qudit,
            matrix: flip,
        }]);
    };

    let mut compute = Vec::with_capacity(rest.len());
    let mut flag_qudit = first.qudit;
    let mut flag_levels = first.condition.clone();
    for carrier in rest {
        let d = mapping.dims()[carrier.qudit];
        let flags = &carrier.free[..carrier.condition.len()];
        let mut perm: Vec<usize> = (0..d).collect();
        for (&s, &f) in carrier.condition.iter().zip(flags) {
            perm.swap(s, f);
        }
        compute.push(QuditGate::Controlled {
            control: flag_qudit,
            levels: flag_levels,
            target: carrier.qudit,
            matrix: Matrix::permutation(&perm),
        });
        flag_qudit = carrier.qudit;
        flag_levels = flags.to_vec();
    }

    let mut out = compute.clone();
    out.push(QuditGate::Controlled {
        control: flag_qudit,
        levels: flag_levels,
        target: t.qudit,
        matrix: flip,
    });
    out.extend(compute.into_iter().rev());
    Ok(out)
}

/// Number of distinct non-target qudits hosting controls of a multi-controlled gate.
pub fn carrier_count(controls: &[usize], target: usize, mapping: &Mapping) -> usize {
    let t = mapping.slot(target).qudit;
    let mut qudits: Vec<usize> = controls
        .iter()
        .map(|&q| mapping.slot(q).qudit)
        .filter(|&j| j != t)
        .collect();
    qudits.sort_unstable();
    qudits.dedup();
    qudits.len()
}

/// Lowers every gate of `c` in order.
pub fn transpile(c: &QubitCircuit, mapping: &Mapping) -> Result<QuditCircuit> {
    c.validate()?;
    if mapping.n() != c.n {
        return Err(Error::InvalidMapping(format!(
            "mapping covers {} qubits, circuit has {}",
            mapping.n(),
            c.n
        )));
    }
    let mut ctx = LoweringContext::new(mapping);
    for (pos, gate) in c.gates.iter().enumerate() {
        ctx.lower(gate).map_err(|e| e.at_gate(pos))?;
    }
    Ok(ctx.finish())
}
