//! Qubit-only reference lowering: multi-controlled X through a clean-ancilla Toffoli
//! ladder, each Toffoli through the textbook six-CNOT circuit.

use crate::circuit::{NamedGate, QubitCircuit, QubitGate};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, ONE};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

/// A circuit of single-qubit gates and CNOTs on `original_qubits + ancillas` qubits.
/// Ancillas are the highest-numbered qubits and start and end in |0>.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineCircuit {
    pub circuit: QubitCircuit,
    pub original_qubits: usize,
    pub ancillas: usize,
}

impl BaselineCircuit {
    pub fn two_qubit_gates(&self) -> usize {
        self.circuit.two_qubit_gate_count()
    }

    pub fn single_qubit_gates(&self) -> usize {
        self.circuit.gates.len() - self.two_qubit_gates()
    }
}

fn t_dagger(qubit: usize) -> QubitGate {
    QubitGate::Unitary {
        matrix: Matrix::diagonal(&[ONE, Complex64::from_polar(1.0, -FRAC_PI_4)]),
        qubit,
    }
}

fn named(gate: NamedGate, qubit: usize) -> QubitGate {
    QubitGate::Named { gate, qubit }
}

/// Exact Toffoli with six CNOTs, two H and seven T/T^dag.
pub fn toffoli(a: usize, b: usize, c: usize, out: &mut Vec<QubitGate>) {
    use NamedGate::{H, T};
    out.extend([
        named(H, c),
        QubitGate::cnot(b, c),
        t_dagger(c),
        QubitGate::cnot(a, c),
        named(T, c),
        QubitGate::cnot(b, c),
        t_dagger(c),
        QubitGate::cnot(a, c),
        named(T, b),
        named(T, c),
        named(H, c),
        QubitGate::cnot(a, b),
        named(T, a),
        t_dagger(b),
        QubitGate::cnot(a, b),
    ]);
}

/// `2k - 3` Toffolis for `k >= 2` controls using ancillas `first_ancilla..`.
fn mcx_ladder(controls: &[usize], target: usize, first_ancilla: usize, out: &mut Vec<QubitGate>) {
    let k = controls.len();
    if k == 1 {
        out.push(QubitGate::cnot(controls[0], target));
        return;
    }
    if k == 2 {
        toffoli(controls[0], controls[1], target, out);
        return;
    }
    // ancilla i holds c_0 & ... & c_{i+1}
    let anc = |i: usize| first_ancilla + i;
    let mut compute = Vec::with_capacity(k - 2);
    compute.push((controls[0], controls[1], anc(0)));
    for i in 1..k - 2 {
        compute.push((controls[i + 1], anc(i - 1), anc(i)));
    }
    for &(a, b, c) in &compute {
        toffoli(a, b, c, out);
    }
    toffoli(controls[k - 1], anc(k - 3), target, out);
    for &(a, b, c) in compute.iter().rev() {
        toffoli(a, b, c, out);
    }
}

/// Expands every MCX and CZ into single-qubit gates and CNOTs.
pub fn baseline_qubit_lowering(c: &QubitCircuit, ancillas: usize) -> Result<BaselineCircuit> {
    c.validate()?;
    let n = c.n;
    let mut gates = Vec::new();
    for (pos, gate) in c.gates.iter().enumerate() {
        match gate {
            QubitGate::Mcx { controls, target } => {
                let needed = controls.len().saturating_sub(2);
                if needed > ancillas {
                    return Err(Error::InsufficientAncillas {
                        gate: pos,
                        controls: controls.len(),
                        needed,
                        available: ancillas,
                    });
                }
                mcx_ladder(controls, *target, n, &mut gates);
            }
            QubitGate::Cz { control, target } => {
                gates.push(named(NamedGate::H, *target));
                gates.push(QubitGate::cnot(*control, *target));
                gates.push(named(NamedGate::H, *target));
            }
            other => gates.push(other.clone()),
        }
    }
    Ok(BaselineCircuit {
        circuit: QubitCircuit::with_gates(n + ancillas, gates),
        original_qubits: n,
        ancillas,
    })
}

/// Ancillas needed so that every MCX of `c` can be lowered.
pub fn required_ancillas(c: &QubitCircuit) -> usize {
    c.max_mcx_controls().saturating_sub(2)
}
