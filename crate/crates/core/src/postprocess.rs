//! Pulling qudit outcomes back to qubit bit strings and checking them against the
//! qubit-level distribution.

use crate::error::{Error, Result};
use crate::mapping::{bits_to_string, Mapping};
use crate::register;
use crate::sim::{Counts, Distribution, PROBABILITY_FLOOR};
use std::collections::BTreeMap;

/// Maps every qudit outcome key through the inverse mapping.
///
/// Any key outside the image is a transpiler bug under exact simulation and fails the whole
/// table with `SupportViolation`.
pub fn decode_counts(c: &Counts, m: &Mapping) -> Result<Counts> {
    let mut decoded = BTreeMap::new();
    let mut violations = Vec::new();
    for (key, &count) in &c.counts {
        let digits = register::key_to_digits(key, m.dims())?;
        match m.decode_basis(&digits) {
            Ok(bits) => {
                let previous = decoded.insert(bits_to_string(&bits), count);
                assert!(previous.is_none(), "injective mapping produced a collision");
            }
            Err(_) => violations.push((key.clone(), count)),
        }
    }
    if !violations.is_empty() {
        return Err(Error::SupportViolation { violations });
    }
    Ok(Counts {
        shots: c.shots,
        seed: c.seed,
        generator: c.generator.clone(),
        counts: decoded,
    })
}

/// Qubit-register distribution `p(x) = p_qd(encode(x))`.
pub fn pull_back(qudit: &Distribution, m: &Mapping) -> Distribution {
    Distribution {
        dims: vec![2; m.n()],
        probs: (0..1usize << m.n())
            .map(|x| qudit.probs[m.encode_index(x)])
            .collect(),
    }
}

/// Total probability on basis states outside the image of `m`.
pub fn off_image_mass(qudit: &Distribution, m: &Mapping) -> f64 {
    qudit
        .probs
        .iter()
        .enumerate()
        .filter(|(i, &p)| p >= PROBABILITY_FLOOR && m.decode_index(*i).is_none())
        .fold(0.0, |acc, (_, &p)| acc + p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    /// max over the image of |p_qd(y) - p_qb(decode(y))|.
    pub max_abs_diff: f64,
    pub off_image_mass: f64,
    /// Total variation distance between `p_qb` and the pulled-back `p_qd`.
    pub total_variation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn verify_consistency(
    qudit: &Distribution,
    qubit: &Distribution,
    m: &Mapping,
    tol: f64,
) -> Result<ConsistencyReport> {
    if qudit.dims != m.dims() {
        return Err(Error::DimensionMismatch(format!(
            "qudit distribution over {:?}, mapping over {:?}",
            qudit.dims,
            m.dims()
        )));
    }
    if qubit.probs.len() != 1 << m.n() {
        return Err(Error::DimensionMismatch(format!(
            "qubit distribution has {} entries, mapping covers {} qubits",
            qubit.probs.len(),
            m.n()
        )));
    }
    let pulled = pull_back(qudit, m);
    let max_abs_diff = pulled
        .probs
        .iter()
        .zip(&qubit.probs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let off = off_image_mass(qudit, m);
    let total_variation = total_variation_distance(&pulled.probs, &qubit.probs);
    Ok(ConsistencyReport {
        max_abs_diff,
        off_image_mass: off,
        total_variation,
        tolerance: tol,
        passed: max_abs_diff <= tol && off <= tol,
    })
}

/// `1/2 sum |p - q|` over a common outcome space.
pub fn total_variation_distance(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(
        p.len(),
        q.len(),
        "distributions over different outcome spaces"
    );
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Total variation distance between two keyed tables; missing keys count as zero.
pub fn total_variation_tables(p: &BTreeMap<String, f64>, q: &BTreeMap<String, f64>) -> f64 {
    let mut sum = 0.0;
    for (k, a) in p {
        sum += (a - q.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, b) in q {
        if !p.contains_key(k) {
            sum += b.abs();
        }
    }
    0.5 * sum
}
