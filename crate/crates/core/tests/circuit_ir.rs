mod common;

use proptest::prelude::*;
use qudit_lift::circuit::PRODUCT_UNITARY_TOL;
use qudit_lift::io::{self, CircuitFile};
use qudit_lift::matrix::ONE;
use qudit_lift::reference::reference_circuit;
use qudit_lift::register;
use qudit_lift::{
    qubit_unitary, qudit_unitary, run_qubit, Axis, Matrix, QuantumState, QubitCircuit, QubitGate,
    QuditCircuit, QuditGate,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn bell_unitary_columns_match_basis_simulation() {
    let c = QubitCircuit::with_gates(2, vec![QubitGate::h(0), QubitGate::cnot(0, 1)]);
    let u = qubit_unitary(&c).unwrap();
    for col in 0..4 {
        // Prepend X gates to start from basis state `col`, then simulate.
        let mut prep = QubitCircuit::new(2);
        for q in 0..2 {
            if col >> (1 - q) & 1 == 1 {
                prep.push(QubitGate::x(q));
            }
        }
        prep.gates.extend(c.gates.iter().cloned());
        let s = run_qubit(&prep).unwrap();
        for row in 0..4 {
            assert!((s.amplitudes()[row] - u[(row, col)]).norm() < 1e-14);
        }
    }
}

#[test]
fn controlled_embedded_block_against_brute_force() {
    let x01 = Matrix::permutation(&[1, 0, 2]);
    let c = QuditCircuit::with_gates(
        vec![3, 3],
        vec![QuditGate::Controlled {
            control: 0,
            levels: vec![2],
            target: 1,
            matrix: x01,
        }],
    );
    let u = qudit_unitary(&c).unwrap();
    for col in 0..9 {
        let (a, b) = (col / 3, col % 3);
        let b_out = if a == 2 && b < 2 { 1 - b } else { b };
        for row in 0..9 {
            let expected = if row == a * 3 + b_out { 1.0 } else { 0.0 };
            assert_eq!(u[(row, col)], ONE * expected, "entry ({row}, {col})");
        }
    }
}

#[test]
fn qudit_unitary_columns_match_simulator_on_mixed_register() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dims = vec![3, 4, 2];
    let gates = (0..12)
        .map(|_| common::random_qudit_gate(&mut rng, &dims))
        .collect();
    let c = QuditCircuit::with_gates(dims.clone(), gates);
    let u = qudit_unitary(&c).unwrap();
    assert!(u.is_unitary(PRODUCT_UNITARY_TOL));
    for col in 0..24 {
        let mut s = QuantumState::basis(&dims, &register::index_to_digits(col, &dims)).unwrap();
        for g in &c.gates {
            s.apply(g).unwrap();
        }
        for row in 0..24 {
            assert!((s.amplitudes()[row] - u[(row, col)]).norm() < 1e-12);
        }
    }
}

fn random_qubit_gate<R: Rng>(rng: &mut R, n: usize) -> QubitGate {
    let q = rng.random_range(0..n);
    match rng.random_range(0..5) {
        0 => QubitGate::h(q),
        1 => QubitGate::Rotation {
            axis: [Axis::X, Axis::Y, Axis::Z][rng.random_range(0..3)],
            angle: rng.random_range(-7.0..7.0),
            qubit: q,
        },
        2 => QubitGate::Unitary {
            matrix: common::random_unitary(rng, 2),
            qubit: q,
        },
        3 if n > 1 => {
            let p = common::distinct_qubits(rng, n, 2);
            QubitGate::cnot(p[0], p[1])
        }
        4 if n > 2 => {
            let mut p = common::distinct_qubits(rng, n, 3);
            let t = p.pop().unwrap();
            QubitGate::mcx(p, t)
        }
        _ => QubitGate::t(q),
    }
}

#[test]
fn composed_unitaries_stay_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let n = rng.random_range(1..=5);
        let gates = (0..60).map(|_| random_qubit_gate(&mut rng, n)).collect();
        let u = qubit_unitary(&QubitCircuit::with_gates(n, gates)).unwrap();
        assert!(u.unitarity_deviation() <= PRODUCT_UNITARY_TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Gates on disjoint supports commute.
    #[test]
    fn disjoint_gates_commute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qubits = common::distinct_qubits(&mut rng, 3, 3);
        let a = QubitGate::Unitary { matrix: common::random_unitary(&mut rng, 2), qubit: qubits[0] };
        let b = if rng.random_bool(0.5) {
            QubitGate::cnot(qubits[1], qubits[2])
        } else {
            QubitGate::cz(qubits[2], qubits[1])
        };
        let ab = qubit_unitary(&QubitCircuit::with_gates(3, vec![a.clone(), b.clone()])).unwrap();
        let ba = qubit_unitary(&QubitCircuit::with_gates(3, vec![b, a])).unwrap();
        prop_assert!(ab.max_abs_diff(&ba) < 1e-12);
    }

    /// parse(serialize(c)) == c.
    #[test]
    fn qubit_documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(1..=6);
        let len = rng.random_range(0..15);
        let c = QubitCircuit::with_gates(n, (0..len).map(|_| random_qubit_gate(&mut rng, n)).collect());
        let text = io::qubit_circuit_to_json(&c);
        prop_assert_eq!(io::parse_qubit_circuit(&text).unwrap(), c);
    }

    #[test]
    fn qudit_documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(1..=3);
        let dims: Vec<usize> = (0..m).map(|_| rng.random_range(2..=5)).collect();
        let len = rng.random_range(0..8);
        let c = QuditCircuit::with_gates(dims.clone(), (0..len).map(|_| common::random_qudit_gate(&mut rng, &dims)).collect());
        let text = io::qudit_circuit_to_json(&c);
        prop_assert_eq!(io::parse_qudit_circuit(&text).unwrap(), c);
    }
}

#[test]
fn hundred_random_documents_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let n = rng.random_range(1..=6);
        let c =
            QubitCircuit::with_gates(n, (0..12).map(|_| random_qubit_gate(&mut rng, n)).collect());
        assert_eq!(
            io::parse_qubit_circuit(&io::qubit_circuit_to_json(&c)).unwrap(),
            c
        );
    }
}

#[test]
fn reference_fixture_round_trips() {
    let text = common::read_fixture("fig2_circuit.json");
    let parsed = io::parse_circuit(&text).unwrap();
    assert_eq!(parsed, CircuitFile::Qubit(reference_circuit()));
    assert_eq!(io::circuit_to_json(&parsed), text);
}
