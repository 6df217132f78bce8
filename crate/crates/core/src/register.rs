//! Mixed-radix basis indexing. Qudit 0 is the most significant digit.

use crate::error::{Error, Result};

/// Product of the dimensions, or `None` on overflow.
pub fn total_dimension(dims: &[usize]) -> Option<usize> {
    dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))
}

/// Number of basis states as `u128`, saturating at `u128::MAX`.
pub fn state_count(dims: &[usize]) -> u128 {
    dims.iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
        .unwrap_or(u128::MAX)
}

pub fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::InvalidRegister("register has no qudits".into()));
    }
    if let Some(j) = dims.iter().position(|&d| d < 2) {
        return Err(Error::InvalidRegister(format!(
            "qudit {j} has dimension {} (< 2)",
            dims[j]
        )));
    }
    Ok(())
}

/// Strides such that `index = sum(digit_j * stride_j)`.
pub fn strides(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1; dims.len()];
    for j in (0..dims.len().saturating_sub(1)).rev() {
        out[j] = out[j + 1] * dims[j + 1];
    }
    out
}

pub fn index_to_digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for j in (0..dims.len()).rev() {
        digits[j] = index % dims[j];
        index /= dims[j];
    }
    digits
}

pub fn digits_to_index(digits: &[usize], dims: &[usize]) -> usize {
    digits
        .iter()
        .zip(dims)
        .fold(0, |acc, (&digit, &d)| acc * d + digit)
}

/// Outcome key: one character per qudit when every `d <= 10`, dash-separated decimals otherwise.
pub fn digits_to_key(digits: &[usize], dims: &[usize]) -> String {
    if dims.iter().all(|&d| d <= 10) {
        digits
            .iter()
            .map(|&x| char::from_digit(x as u32, 10).expect("digit below 10"))
            .collect()
    } else {
        digits
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

pub fn key_to_digits(key: &str, dims: &[usize]) -> Result<Vec<usize>> {
    let bad = || {
        Error::schema(
            format!("counts.{key}"),
            "outcome key does not match the register",
        )
    };
    let digits: Vec<usize> = if dims.iter().all(|&d| d <= 10) {
        key.chars()
            .map(|c| c.to_digit(10).map(|x| x as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?
    } else {
        key.split('-')
            .map(|s| s.parse::<usize>().ok())
            .collect::<Option<_>>()
            .ok_or_else(bad)?
    };
    if digits.len() != dims.len() || digits.iter().zip(dims).any(|(&x, &d)| x >= d) {
        return Err(bad());
    }
    Ok(digits)
}
