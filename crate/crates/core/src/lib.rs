//! Realizes qubit circuits on qudit registers.
//!
//! The pipeline has three stages:
//!
//! 1. [`transpile`]: pick a qubit-to-qudit [`Mapping`] (or take one) and lower each qubit
//!    gate to native qudit gates, packing several qubits into one qudit and using unused
//!    upper levels as flags for multi-controlled gates.
//! 2. [`sim`]: run the qudit circuit exactly on a dense state vector and sample outcomes.
//! 3. [`postprocess`]: decode qudit outcomes back into qubit bit strings and check them
//!    against the qubit-level distribution.
//!
//! [`cost`] scores lowered circuits by their estimated fidelity.

pub mod circuit;
pub mod cost;
pub mod error;
pub mod io;
pub mod mapping;
pub mod matrix;
pub mod postprocess;
pub mod reference;
pub mod register;
pub mod sim;
pub mod transpile;

pub use circuit::{
    qubit_unitary, qudit_unitary, validate_qubit_circuit, Axis, NamedGate, QubitCircuit, QubitGate,
    QuditCircuit, QuditGate,
};
pub use cost::{
    compare, count_gates, estimate_fidelity, ErrorModel, FidelityEstimate, TranspileReport,
};
pub use error::{Error, Result};
pub use mapping::{enumerate_mappings, trivial_mapping, LevelBudget, Mapping};
pub use matrix::Matrix;
pub use postprocess::{
    decode_counts, total_variation_distance, verify_consistency, ConsistencyReport,
};
pub use sim::{
    exact_distribution, init_state, run, run_qubit, sample, Counts, Distribution, QuantumState,
};
pub use transpile::{
    baseline_qubit_lowering, lower_cnot, lower_mcx, lower_single_qubit_gate, select_mapping,
    transpile, BaselineCircuit, SearchOutcome,
};
