#![allow(dead_code)]

use num_complex::Complex64;
use qudit_lift::mapping::capacity;
use qudit_lift::{
    qubit_unitary, qudit_unitary, Error, Mapping, Matrix, QubitCircuit, QubitGate, QuditCircuit,
    QuditGate,
};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture readable")
}

/// `count` distinct qubits drawn from `0..n`.
pub fn distinct_qubits<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(count);
    all
}

/// Random circuit over {H, X, T, CNOT, CZ, MCX}.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, len: usize) -> QubitCircuit {
    let mut c = QubitCircuit::new(n);
    for _ in 0..len {
        let choice = if n == 1 {
            rng.random_range(0..3)
        } else {
            rng.random_range(0..6)
        };
        let gate = match choice {
            0 => QubitGate::h(rng.random_range(0..n)),
            1 => QubitGate::x(rng.random_range(0..n)),
            2 => QubitGate::t(rng.random_range(0..n)),
            3 => {
                let q = distinct_qubits(rng, n, 2);
                QubitGate::cnot(q[0], q[1])
            }
            4 => {
                let q = distinct_qubits(rng, n, 2);
                QubitGate::cz(q[0], q[1])
            }
            _ => {
                let k = rng.random_range(1..n);
                let mut q = distinct_qubits(rng, n, k + 1);
                let target = q.pop().unwrap();
                QubitGate::mcx(q, target)
            }
        };
        c.push(gate);
    }
    c
}

/// Random register whose qudits can jointly hold `n` qubits.
pub fn random_dims<R: Rng>(rng: &mut R, n: usize, choices: &[usize]) -> Vec<usize> {
    loop {
        let m = rng.random_range(n.div_ceil(2).max(1)..=n + 1);
        let dims: Vec<usize> = (0..m).map(|_| *choices.choose(rng).unwrap()).collect();
        if dims.iter().map(|&d| capacity(d)).sum::<usize>() >= n {
            return dims;
        }
    }
}

/// Uniformly shuffled qubits dropped into random qudits with spare capacity.
pub fn random_mapping<R: Rng>(rng: &mut R, n: usize, dims: &[usize]) -> Mapping {
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    let mut groups = vec![Vec::new(); dims.len()];
    for q in qubits {
        let open: Vec<usize> = (0..dims.len())
            .filter(|&j| groups[j].len() < capacity(dims[j]))
            .collect();
        let j = *open.choose(rng).expect("capacity checked");
        groups[j].push(q);
    }
    Mapping::new(groups, dims.to_vec()).unwrap()
}

/// Draws mappings until the circuit lowers; `None` after `tries` failures.
pub fn feasible_mapping<R: Rng>(
    rng: &mut R,
    c: &QubitCircuit,
    dims: &[usize],
    tries: usize,
) -> Option<(Mapping, QuditCircuit)> {
    for _ in 0..tries {
        let m = random_mapping(rng, c.n, dims);
        match qudit_lift::transpile(c, &m) {
            Ok(q) => return Some((m, q)),
            Err(Error::InsufficientFreeLevels { .. }) => continue,
            Err(e) => panic!("unexpected lowering error {e}"),
        }
    }
    None
}

/// Restriction `V^dag U V` of a register unitary to the image of the mapping.
pub fn restrict_to_image(u_qd: &Matrix, m: &Mapping) -> Matrix {
    let dim = 1usize << m.n();
    let enc: Vec<usize> = (0..dim).map(|x| m.encode_index(x)).collect();
    let mut out = Matrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            out[(r, c)] = u_qd[(enc[r], enc[c])];
        }
    }
    out
}

/// `max|V^dag U_qd V - e^{i theta} U_qb|` with the phase fit at the largest entry.
pub fn image_equivalence_error(c: &QubitCircuit, q: &QuditCircuit, m: &Mapping) -> f64 {
    let u_qb = qubit_unitary(c).unwrap();
    let u_qd = qudit_unitary(q).unwrap();
    restrict_to_image(&u_qd, m).max_abs_diff_up_to_phase(&u_qb)
}

/// Dense multi-controlled X on `n` qubits, built entry by entry.
pub fn mcx_matrix(n: usize, controls: &[usize], target: usize) -> Matrix {
    let dim = 1usize << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let perm: Vec<usize> = (0..dim)
        .map(|x| {
            if controls.iter().all(|&c| x & bit(c) != 0) {
                x ^ bit(target)
            } else {
                x
            }
        })
        .collect();
    Matrix::permutation(&perm)
}

/// Pearson chi-square statistic and its p-value.
pub fn chi_square(observed: &[u64], expected_probs: &[f64]) -> (f64, f64) {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let total: u64 = observed.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0;
    for (&o, &p) in observed.iter().zip(expected_probs) {
        if p <= 0.0 {
            assert_eq!(o, 0, "observation in a zero-probability cell");
            continue;
        }
        let e = p * total as f64;
        stat += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    let df = (cells - 1) as f64;
    let p = ChiSquared::new(df).unwrap().sf(stat);
    (stat, p)
}

pub fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    // Gram-Schmidt on a random complex matrix.
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        for u in &cols {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    let mut m = Matrix::zeros(d);
    for (c, col) in cols.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            m[(r, c)] = x;
        }
    }
    m
}

pub fn random_qudit_gate<R: Rng>(rng: &mut R, dims: &[usize]) -> QuditGate {
    let m = dims.len();
    let target = rng.random_range(0..m);
    let matrix = random_unitary(rng, dims[target]);
    if m == 1 || rng.random_bool(0.4) {
        return QuditGate::Local {
            qudit: target,
            matrix,
        };
    }
    let control = (target + rng.random_range(1..m)) % m;
    let mut levels: Vec<usize> = (0..dims[control])
        .filter(|_| rng.random_bool(0.5))
        .collect();
    if levels.is_empty() {
        levels.push(dims[control] - 1);
    }
    QuditGate::Controlled {
        control,
        levels,
        target,
        matrix,
    }
}
