mod common;

use num_complex::Complex64;
use qudit_lift::sim::GENERATOR_ID;
use qudit_lift::{qudit_unitary, register, sample, Matrix, QuantumState, QuditCircuit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state<R: Rng>(rng: &mut R, dims: &[usize]) -> QuantumState {
    let dim = register::total_dimension(dims).unwrap();
    let raw: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    QuantumState::from_amplitudes(dims, raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn apply_gate_matches_dense_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let m = rng.random_range(1..=4);
        let dims: Vec<usize> = loop {
            let d: Vec<usize> = (0..m).map(|_| rng.random_range(2..=5)).collect();
            if register::total_dimension(&d).unwrap() <= 256 {
                break d;
            }
        };
        let gate = common::random_qudit_gate(&mut rng, &dims);
        let u = qudit_unitary(&QuditCircuit::with_gates(dims.clone(), vec![gate.clone()])).unwrap();
        let s = random_state(&mut rng, &dims);
        let mut out = s.clone();
        out.apply(&gate).unwrap();
        for r in 0..u.dim() {
            let expected: Complex64 = u
                .row(r)
                .iter()
                .zip(s.amplitudes())
                .map(|(a, b)| a * b)
                .sum();
            assert!((out.amplitudes()[r] - expected).norm() <= 1e-10);
        }
    }
}

#[test]
fn norm_drift_over_long_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let dims = vec![3, 5, 4, 2];
    let mut s = random_state(&mut rng, &dims);
    for _ in 0..100 {
        let before = s.norm_sqr();
        s.apply(&common::random_qudit_gate(&mut rng, &dims))
            .unwrap();
        assert!((s.norm_sqr() - before).abs() <= 1e-9);
    }
    assert!((s.norm_sqr() - 1.0).abs() <= 1e-7);
}

/// Amplitudes sqrt(0.1, 0.2, 0.3, 0.4) on a ququart.
fn four_outcome_state() -> QuantumState {
    let amps = [0.1f64, 0.2, 0.3, 0.4]
        .iter()
        .map(|p| Complex64::new(p.sqrt(), 0.0))
        .collect();
    QuantumState::from_amplitudes(&[4], amps).unwrap()
}

#[test]
fn sampling_fits_known_distribution() {
    let counts = sample(&four_outcome_state(), 100_000, 20_240_601).unwrap();
    let observed: Vec<u64> = ["0", "1", "2", "3"]
        .iter()
        .map(|k| counts.counts.get(*k).copied().unwrap_or(0))
        .collect();
    let (stat, p) = common::chi_square(&observed, &[0.1, 0.2, 0.3, 0.4]);
    assert!(p > 1e-4, "chi-square {stat} with p = {p}");
}

#[test]
fn sampling_is_byte_identical_across_runs() {
    let s = four_outcome_state();
    let a = qudit_lift::io::counts_to_json(&sample(&s, 4096, 1).unwrap());
    let b = qudit_lift::io::counts_to_json(&sample(&s, 4096, 1).unwrap());
    assert_eq!(a, b);
    assert!(a.contains(GENERATOR_ID));
}

#[test]
fn zero_probability_outcomes_are_never_drawn() {
    // Mass only on levels 1 and 3, with a rounding-sized sliver on level 0.
    let amps = vec![
        Complex64::new(1e-9, 0.0),
        Complex64::new(0.5f64.sqrt(), 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.5f64.sqrt()),
    ];
    let s = QuantumState::from_amplitudes(&[4], amps).unwrap();
    let counts = sample(&s, 50_000, 9).unwrap();
    assert_eq!(counts.counts.keys().collect::<Vec<_>>(), vec!["1", "3"]);
}

#[test]
fn large_registers_use_the_same_kernel() {
    // 3 * 5^6 = 46875 amplitudes crosses the parallel threshold.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let dims = vec![3, 5, 5, 5, 5, 5, 5];
    let gates: Vec<_> = (0..10)
        .map(|_| common::random_qudit_gate(&mut rng, &dims))
        .collect();
    let a = qudit_lift::run(&QuditCircuit::with_gates(dims.clone(), gates.clone())).unwrap();
    let b = qudit_lift::run(&QuditCircuit::with_gates(dims.clone(), gates)).unwrap();
    assert_eq!(a, b);
    assert!((a.norm_sqr() - 1.0).abs() < 1e-9);
}

#[test]
fn identity_gate_leaves_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let s = random_state(&mut rng, &[3, 3]);
    let mut t = s.clone();
    t.apply(&qudit_lift::QuditGate::Local {
        qudit: 1,
        matrix: Matrix::identity(3),
    })
    .unwrap();
    assert_eq!(s, t);
}
