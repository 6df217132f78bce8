//! The five-qubit example circuit and its four-ququart mapping.

use crate::circuit::{QubitCircuit, QubitGate};
use crate::mapping::Mapping;

pub const REFERENCE_DIMS: [usize; 4] = [4, 4, 4, 4];
/// Clean ancillas available to the qubit-only baseline.
pub const REFERENCE_ANCILLAS: usize = 2;

/// CNOT(1, 3), H on qubits 0..=3, then X on qubit 4 controlled by qubits 0..=3.
pub fn reference_circuit() -> QubitCircuit {
    let mut gates = vec![QubitGate::cnot(1, 3)];
    gates.extend((0..4).map(QubitGate::h));
    gates.push(QubitGate::mcx(vec![0, 1, 2, 3], 4));
    QubitCircuit::with_gates(5, gates)
}

/// Qubits 1 and 3 share qudit 0 (qubit 1 high); qubits 0, 2, 4 sit alone in qudits 1..=3.
pub fn reference_mapping() -> Mapping {
    Mapping::new(
        vec![vec![1, 3], vec![0], vec![2], vec![4]],
        REFERENCE_DIMS.to_vec(),
    )
    .expect("reference mapping is valid")
}
