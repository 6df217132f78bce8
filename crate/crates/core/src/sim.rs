//! Dense state-vector emulation over mixed-radix registers.
//!
//! Gates are applied by walking the fibers of the target qudit: for a target with
//! dimension `d` and stride `s`, the amplitude vector splits into blocks of `d * s`
//! entries, and within each block the `d` entries `i, i + s, ..., i + (d-1) s` form one
//! fiber. Blocks are independent, so large registers update them in parallel; every
//! amplitude is written exactly once and the result is identical to the serial order.

use crate::circuit::{QubitCircuit, QuditCircuit, QuditGate};
use crate::error::{Error, Result};
use crate::mapping::{bits_to_string, index_to_bits};
use crate::matrix::{Matrix, ONE, ZERO};
use crate::register;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const MAX_STATE_DIMENSION: usize = 1 << 24;
/// Probabilities below this are treated as exactly zero when sampling and checking support.
pub const PROBABILITY_FLOOR: f64 = 1e-15;
/// Identifier written into [`Counts`] for the sampling generator.
pub const GENERATOR_ID: &str = "chacha20-rand0.9-inverse-cdf";

const PARALLEL_MIN_DIMENSION: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// |0...0> on the register.
    pub fn zero(dims: &[usize]) -> Result<Self> {
        register::check_dims(dims)?;
        let dim = match register::total_dimension(dims) {
            Some(d) if d <= MAX_STATE_DIMENSION => d,
            other => {
                return Err(Error::TooLarge {
                    dimension: other.unwrap_or(usize::MAX),
                    limit: MAX_STATE_DIMENSION,
                })
            }
        };
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[0] = ONE;
        Ok(QuantumState {
            dims: dims.to_vec(),
            amplitudes,
        })
    }

    /// Computational basis state with the given digits.
    pub fn basis(dims: &[usize], digits: &[usize]) -> Result<Self> {
        let mut s = Self::zero(dims)?;
        if digits.len() != dims.len() || digits.iter().zip(dims).any(|(&x, &d)| x >= d) {
            return Err(Error::DimensionMismatch(format!(
                "digits {digits:?} invalid for dims {dims:?}"
            )));
        }
        s.amplitudes[0] = ZERO;
        s.amplitudes[register::digits_to_index(digits, dims)] = ONE;
        Ok(s)
    }

    pub fn from_amplitudes(dims: &[usize], amplitudes: Vec<Complex64>) -> Result<Self> {
        register::check_dims(dims)?;
        if register::total_dimension(dims) != Some(amplitudes.len()) {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dims {dims:?}",
                amplitudes.len()
            )));
        }
        Ok(QuantumState {
            dims: dims.to_vec(),
            amplitudes,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn apply(&mut self, gate: &QuditGate) -> Result<()> {
        gate.validate(&self.dims).map_err(|e| match e {
            Error::IndexOutOfRange { .. } | Error::InvalidGate { .. } => {
                Error::DimensionMismatch(e.to_string())
            }
            other => other,
        })?;
        match gate {
            QuditGate::Local { qudit, matrix } => self.apply_controlled(*qudit, matrix, &[]),
            QuditGate::Controlled {
                control,
                levels,
                target,
                matrix,
            } => self.apply_controlled(*target, matrix, &[(*control, levels.as_slice())]),
        }
        Ok(())
    }

    /// Applies `matrix` to `target` on the subspace where each `(qudit, levels)` control
    /// holds one of its levels. Indices are assumed valid.
    fn apply_controlled(&mut self, target: usize, matrix: &Matrix, controls: &[(usize, &[usize])]) {
        let strides = register::strides(&self.dims);
        let d = self.dims[target];
        let stride = strides[target];
        let block = d * stride;
        // Per control: stride, dimension, and a level membership table.
        let conds: Vec<(usize, usize, Vec<bool>)> = controls
            .iter()
            .map(|&(q, levels)| {
                let mut member = vec![false; self.dims[q]];
                for &l in levels {
                    member[l] = true;
                }
                (strides[q], self.dims[q], member)
            })
            .collect();

        let kernel = |block_index: usize, chunk: &mut [Complex64]| {
            let mut fiber = vec![ZERO; d];
            let base = block_index * block;
            for offset in 0..stride {
                let index = base + offset;
                let active = conds
                    .iter()
                    .all(|(s, dim, member)| member[(index / s) % dim]);
                if !active {
                    continue;
                }
                for (k, f) in fiber.iter_mut().enumerate() {
                    *f = chunk[offset + k * stride];
                }
                for (i, row) in matrix.rows().enumerate() {
                    let mut acc = ZERO;
                    for (m, f) in row.iter().zip(&fiber) {
                        acc += m * f;
                    }
                    chunk[offset + i * stride] = acc;
                }
            }
        };

        if self.amplitudes.len() >= PARALLEL_MIN_DIMENSION {
            self.amplitudes
                .par_chunks_mut(block)
                .enumerate()
                .for_each(|(b, chunk)| kernel(b, chunk));
        } else {
            self.amplitudes
                .chunks_mut(block)
                .enumerate()
                .for_each(|(b, chunk)| kernel(b, chunk));
        }
    }

    pub fn distribution(&self) -> Distribution {
        Distribution {
            dims: self.dims.clone(),
            probs: self.amplitudes.iter().map(Complex64::norm_sqr).collect(),
        }
    }
}

pub fn init_state(dims: &[usize]) -> Result<QuantumState> {
    QuantumState::zero(dims)
}

pub fn apply_gate(mut s: QuantumState, g: &QuditGate) -> Result<QuantumState> {
    s.apply(g)?;
    Ok(s)
}

/// Runs the circuit from |0...0>.
pub fn run(c: &QuditCircuit) -> Result<QuantumState> {
    let mut s = QuantumState::zero(&c.dims)?;
    for gate in &c.gates {
        s.apply(gate)?;
    }
    Ok(s)
}

/// Runs a qubit circuit directly on `n` two-level systems; multi-controlled gates are
/// applied natively rather than decomposed.
pub fn run_qubit(c: &QubitCircuit) -> Result<QuantumState> {
    c.validate()?;
    let mut s = QuantumState::zero(&vec![2; c.n])?;
    let one: &[usize] = &[1];
    for gate in &c.gates {
        let (controls, target, matrix) = gate.as_controlled();
        let conds: Vec<(usize, &[usize])> = controls.iter().map(|&q| (q, one)).collect();
        s.apply_controlled(target, &matrix, &conds);
    }
    Ok(s)
}

/// Outcome probabilities indexed by mixed-radix basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub dims: Vec<usize>,
    pub probs: Vec<f64>,
}

impl Distribution {
    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn key(&self, index: usize) -> String {
        register::digits_to_key(&register::index_to_digits(index, &self.dims), &self.dims)
    }

    /// Non-negligible outcomes keyed by digit string.
    pub fn to_table(&self) -> BTreeMap<String, f64> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= PROBABILITY_FLOOR)
            .map(|(i, &p)| (self.key(i), p))
            .collect()
    }
}

pub fn exact_distribution(s: &QuantumState) -> Distribution {
    s.distribution()
}

/// Sampled outcomes together with the information needed to reproduce them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub shots: u64,
    pub seed: u64,
    pub generator: String,
    pub counts: BTreeMap<String, u64>,
}

impl Counts {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// `shots` inverse-CDF draws over the basis in index order, one uniform per shot.
pub fn sample(s: &QuantumState, shots: u64, seed: u64) -> Result<Counts> {
    if shots == 0 {
        return Err(Error::InvalidRegister("shots must be at least 1".into()));
    }
    let dist = s.distribution();
    let mut cumulative = Vec::with_capacity(dist.probs.len());
    let mut acc = 0.0;
    for &p in &dist.probs {
        if p >= PROBABILITY_FLOOR {
            acc += p;
        }
        cumulative.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut tally = vec![0u64; cumulative.len()];
    for _ in 0..shots {
        let u: f64 = rng.random::<f64>() * total;
        // First index whose cumulative mass exceeds u; zero-mass entries never qualify.
        let idx = cumulative
            .partition_point(|&c| c <= u)
            .min(cumulative.len() - 1);
        tally[idx] += 1;
    }
    let counts = tally
        .iter()
        .enumerate()
        .filter(|(_, &t)| t > 0)
        .map(|(i, &t)| (dist.key(i), t))
        .collect();
    Ok(Counts {
        shots,
        seed,
        generator: GENERATOR_ID.to_string(),
        counts,
    })
}

/// Renders a qubit-register basis index as a bit string, qubit 0 first.
pub fn qubit_key(x: usize, n: usize) -> String {
    bits_to_string(&index_to_bits(x, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{qudit_unitary, NamedGate};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn init_examples() {
        assert_eq!(init_state(&[3]).unwrap().amplitudes(), &[ONE, ZERO, ZERO]);
        assert_eq!(init_state(&[2, 2]).unwrap().amplitudes().len(), 4);
        let s = init_state(&[4, 4, 4, 4]).unwrap();
        assert_eq!(s.amplitudes().len(), 256);
        assert_eq!(s.amplitudes()[0], ONE);
        assert!(matches!(init_state(&[2; 25]), Err(Error::TooLarge { .. })));
        assert!(init_state(&[]).is_err());
    }

    #[test]
    fn hadamard_on_qubit() {
        let g = QuditGate::Local {
            qudit: 0,
            matrix: NamedGate::H.matrix(),
        };
        let s = apply_gate(init_state(&[2]).unwrap(), &g).unwrap();
        for a in s.amplitudes() {
            assert!((a - ONE * FRAC_1_SQRT_2).norm() < 1e-15);
        }
    }

    #[test]
    fn qutrit_shift() {
        let g = QuditGate::Local {
            qudit: 0,
            matrix: Matrix::permutation(&[1, 0, 2]),
        };
        let s = apply_gate(init_state(&[3]).unwrap(), &g).unwrap();
        assert_eq!(s.amplitudes(), &[ZERO, ONE, ZERO]);
    }

    #[test]
    fn controlled_swap_against_dense_matrix() {
        let g = QuditGate::Controlled {
            control: 0,
            levels: vec![2],
            target: 1,
            matrix: Matrix::permutation(&[0, 2, 1]),
        };
        let s = apply_gate(QuantumState::basis(&[3, 3], &[2, 1]).unwrap(), &g).unwrap();
        assert_eq!(s, QuantumState::basis(&[3, 3], &[2, 2]).unwrap());
        let s = apply_gate(QuantumState::basis(&[3, 3], &[1, 1]).unwrap(), &g).unwrap();
        assert_eq!(s, QuantumState::basis(&[3, 3], &[1, 1]).unwrap());

        let u = qudit_unitary(&QuditCircuit::with_gates(vec![3, 3], vec![g.clone()])).unwrap();
        for col in 0..9 {
            let digits = register::index_to_digits(col, &[3, 3]);
            let s = apply_gate(QuantumState::basis(&[3, 3], &digits).unwrap(), &g).unwrap();
            for row in 0..9 {
                assert!((s.amplitudes()[row] - u[(row, col)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn mismatched_gate_rejected() {
        let g = QuditGate::Local {
            qudit: 0,
            matrix: Matrix::identity(2),
        };
        assert!(matches!(
            apply_gate(init_state(&[3]).unwrap(), &g),
            Err(Error::DimensionMismatch(_))
        ));
        let g = QuditGate::Local {
            qudit: 3,
            matrix: Matrix::identity(2),
        };
        assert!(matches!(
            apply_gate(init_state(&[2]).unwrap(), &g),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn bell_state_and_distribution() {
        let c = QuditCircuit::with_gates(
            vec![2, 2],
            vec![
                QuditGate::Local {
                    qudit: 0,
                    matrix: NamedGate::H.matrix(),
                },
                QuditGate::Controlled {
                    control: 0,
                    levels: vec![1],
                    target: 1,
                    matrix: NamedGate::X.matrix(),
                },
            ],
        );
        let s = run(&c).unwrap();
        let expected = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert!((a - ONE * e).norm() < 1e-15);
        }
        let table = exact_distribution(&s).to_table();
        assert_eq!(table.keys().collect::<Vec<_>>(), vec!["00", "11"]);
        assert!((table["00"] - 0.5).abs() < 1e-15);

        let counts = sample(&s, 1024, 11).unwrap();
        assert_eq!(counts.total(), 1024);
        assert!(counts.counts.keys().all(|k| k == "00" || k == "11"));
    }

    #[test]
    fn empty_circuit_stays_at_zero() {
        let s = run(&QuditCircuit::new(vec![3, 3])).unwrap();
        assert_eq!(
            exact_distribution(&s).to_table(),
            BTreeMap::from([("00".to_string(), 1.0)])
        );
    }

    #[test]
    fn point_mass_sampling() {
        let s = init_state(&[4, 4, 4, 4]).unwrap();
        let counts = sample(&s, 1024, 3).unwrap();
        assert_eq!(counts.counts, BTreeMap::from([("0000".to_string(), 1024)]));
        assert_eq!(counts.generator, GENERATOR_ID);
        assert!(sample(&s, 0, 3).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let c = QubitCircuit::with_gates(3, (0..3).map(crate::circuit::QubitGate::h).collect());
        let s = run_qubit(&c).unwrap();
        assert_eq!(sample(&s, 500, 42).unwrap(), sample(&s, 500, 42).unwrap());
        assert_ne!(sample(&s, 500, 42).unwrap(), sample(&s, 500, 43).unwrap());
    }

    #[test]
    fn parallel_path_matches_serial_path() {
        // 2^15 amplitudes crosses the parallel threshold; a 2^13 twin stays serial.
        let n = 15;
        let mut c = QubitCircuit::new(n);
        for q in 0..n {
            c.push(crate::circuit::QubitGate::h(q));
        }
        c.push(crate::circuit::QubitGate::mcx(vec![0, 3, 7], 14));
        c.push(crate::circuit::QubitGate::t(14));
        let big = run_qubit(&c).unwrap();
        assert!((big.norm_sqr() - 1.0).abs() < 1e-9);
        let mut serial = QuantumState::zero(&vec![2; n]).unwrap();
        for gate in &c.gates {
            let (controls, target, matrix) = gate.as_controlled();
            let one: &[usize] = &[1];
            let conds: Vec<(usize, &[usize])> = controls.iter().map(|&q| (q, one)).collect();
            let strides = register::strides(serial.dims());
            let d = 2;
            let stride = strides[target];
            let mut amps = serial.amplitudes.clone();
            for index in 0..amps.len() {
                if (index / stride) % d != 0 {
                    continue;
                }
                if !conds.iter().all(|&(q, _)| (index / strides[q]) % 2 == 1) {
                    continue;
                }
                let (a, b) = (amps[index], amps[index + stride]);
                amps[index] = matrix[(0, 0)] * a + matrix[(0, 1)] * b;
                amps[index + stride] = matrix[(1, 0)] * a + matrix[(1, 1)] * b;
            }
            serial.amplitudes = amps;
        }
        assert_eq!(big, serial);
    }

    #[test]
    fn qubit_keys() {
        assert_eq!(qubit_key(8, 5), "01000");
    }
}
