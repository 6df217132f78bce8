//! Qubit-to-qudit mappings.
//!
//! A mapping assigns each qudit an ordered group of qubits. The qubits of a group are
//! written in binary into the qudit's lowest `2^{m_j}` levels, first listed qubit as the
//! most significant bit. Levels at or above `2^{m_j}` are free and can carry flags.

use crate::error::{Error, Result};
use crate::register;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mapping {
    groups: Vec<Vec<usize>>,
    dims: Vec<usize>,
    n: usize,
    /// (qudit, position within group) per qubit.
    location: Vec<(usize, usize)>,
}

/// Where a qubit lives inside the register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub qudit: usize,
    pub position: usize,
    /// Bit weight of the qubit inside the qudit's encoded level.
    pub bit: usize,
}

impl Mapping {
    pub fn new(groups: Vec<Vec<usize>>, dims: Vec<usize>) -> Result<Self> {
        register::check_dims(&dims)?;
        if groups.len() != dims.len() {
            return Err(Error::InvalidMapping(format!(
                "{} groups for {} qudits",
                groups.len(),
                dims.len()
            )));
        }
        let n: usize = groups.iter().map(Vec::len).sum();
        let mut location = vec![None; n];
        for (j, group) in groups.iter().enumerate() {
            let capacity = capacity(dims[j]);
            if group.len() > capacity {
                return Err(Error::InvalidMapping(format!(
                    "qudit {j} of dimension {} cannot hold {} qubits",
                    dims[j],
                    group.len()
                )));
            }
            for (k, &q) in group.iter().enumerate() {
                if q >= n {
                    return Err(Error::InvalidMapping(format!(
                        "qubit {q} out of range for {n} qubits"
                    )));
                }
                if location[q].is_some() {
                    return Err(Error::InvalidMapping(format!("qubit {q} assigned twice")));
                }
                location[q] = Some((j, k));
            }
        }
        Ok(Mapping {
            groups,
            dims,
            n,
            location: location.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Like [`Mapping::new`] but also checks the qubit count.
    pub fn for_qubits(groups: Vec<Vec<usize>>, dims: Vec<usize>, n: usize) -> Result<Self> {
        let m = Self::new(groups, dims)?;
        if m.n != n {
            return Err(Error::InvalidMapping(format!(
                "mapping covers {} qubits, circuit has {n}",
                m.n
            )));
        }
        Ok(m)
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.dims.len()
    }

    pub fn slot(&self, qubit: usize) -> Slot {
        let (qudit, position) = self.location[qubit];
        let len = self.groups[qudit].len();
        Slot {
            qudit,
            position,
            bit: 1 << (len - 1 - position),
        }
    }

    /// Number of encoded levels `2^{m_j}` of qudit `j`.
    pub fn used_levels(&self, j: usize) -> usize {
        1 << self.groups[j].len()
    }

    pub fn level_budget(&self) -> LevelBudget {
        LevelBudget {
            free: (0..self.m())
                .map(|j| (self.used_levels(j)..self.dims[j]).collect())
                .collect(),
        }
    }

    pub fn encode_basis(&self, bits: &[bool]) -> Vec<usize> {
        assert_eq!(bits.len(), self.n, "bit string length must equal n");
        self.groups
            .iter()
            .map(|g| g.iter().fold(0, |acc, &q| (acc << 1) | bits[q] as usize))
            .collect()
    }

    pub fn decode_basis(&self, digits: &[usize]) -> Result<Vec<bool>> {
        assert_eq!(digits.len(), self.m(), "digit string length must equal m");
        let mut bits = vec![false; self.n];
        for (j, (group, &y)) in self.groups.iter().zip(digits).enumerate() {
            if y >= self.used_levels(j) {
                return Err(Error::NotInImage {
                    digits: digits.to_vec(),
                });
            }
            for (k, &q) in group.iter().enumerate() {
                bits[q] = (y >> (group.len() - 1 - k)) & 1 == 1;
            }
        }
        Ok(bits)
    }

    pub fn image_membership(&self, digits: &[usize]) -> bool {
        digits.len() == self.m()
            && digits
                .iter()
                .enumerate()
                .all(|(j, &y)| y < self.used_levels(j))
    }

    /// Register index of the encoding of qubit basis index `x` (qubit 0 most significant).
    pub fn encode_index(&self, x: usize) -> usize {
        self.groups.iter().zip(&self.dims).fold(0, |acc, (g, &d)| {
            let y = g
                .iter()
                .fold(0, |y, &q| (y << 1) | ((x >> (self.n - 1 - q)) & 1));
            acc * d + y
        })
    }

    /// Inverse of [`Mapping::encode_index`]; `None` outside the image.
    pub fn decode_index(&self, index: usize) -> Option<usize> {
        let digits = register::index_to_digits(index, &self.dims);
        let bits = self.decode_basis(&digits).ok()?;
        Some(bits_to_index(&bits))
    }
}

/// Qubits that fit in a qudit of dimension `d`: `floor(log2 d)`.
pub fn capacity(d: usize) -> usize {
    (usize::BITS - 1 - d.leading_zeros()) as usize
}

pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn index_to_bits(x: usize, n: usize) -> Vec<bool> {
    (0..n).map(|q| (x >> (n - 1 - q)) & 1 == 1).collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

/// Free levels per qudit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelBudget {
    pub free: Vec<Vec<usize>>,
}

impl LevelBudget {
    pub fn free_count(&self, j: usize) -> usize {
        self.free[j].len()
    }
}

/// One qubit per qudit on levels {0, 1}; surplus qudits get empty groups.
pub fn trivial_mapping(n: usize, dims: &[usize]) -> Result<Mapping> {
    if dims.len() < n {
        return Err(Error::InsufficientQudits {
            qubits: n,
            qudits: dims.len(),
        });
    }
    let groups = (0..dims.len())
        .map(|j| if j < n { vec![j] } else { Vec::new() })
        .collect();
    Mapping::new(groups, dims.to_vec())
}

/// Fails with `Incompatible` unless the register has at least `2^n` basis states.
pub fn check_compatible(n: usize, dims: &[usize]) -> Result<()> {
    let states = register::state_count(dims);
    let needed = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
    if states < needed {
        return Err(Error::Incompatible { qubits: n, states });
    }
    Ok(())
}

/// All mappings of `n` qubits onto `dims`, in lexicographic order of the group lists,
/// stopping after `limit`.
///
/// Passing the basis-state test does not mean a mapping exists: `dims = (3, 3)` has
/// 9 >= 4 states but only hosts one qubit per qutrit, so two qubits need both qudits.
pub fn enumerate_mappings(n: usize, dims: &[usize], limit: usize) -> Result<Vec<Mapping>> {
    register::check_dims(dims)?;
    check_compatible(n, dims)?;
    let caps: Vec<usize> = dims.iter().map(|&d| capacity(d)).collect();
    // suffix_cap[j] = total capacity of qudits j.. ; prunes dead branches.
    let mut suffix_cap = vec![0; dims.len() + 1];
    for j in (0..dims.len()).rev() {
        suffix_cap[j] = suffix_cap[j + 1] + caps[j];
    }
    let mut out = Vec::new();
    if suffix_cap[0] < n || limit == 0 {
        return Ok(out);
    }
    let mut state = Enumeration {
        n,
        dims,
        caps: &caps,
        suffix_cap: &suffix_cap,
        limit,
        used: vec![false; n],
        groups: vec![Vec::new(); dims.len()],
        out: &mut out,
    };
    state.fill_group(0, 0);
    Ok(out)
}

struct Enumeration<'a> {
    n: usize,
    dims: &'a [usize],
    caps: &'a [usize],
    suffix_cap: &'a [usize],
    limit: usize,
    used: Vec<bool>,
    groups: Vec<Vec<usize>>,
    out: &'a mut Vec<Mapping>,
}

impl Enumeration<'_> {
    fn done(&self) -> bool {
        self.out.len() >= self.limit
    }

    /// Pre-order walk over sequences for group `j`: emitting a prefix before its
    /// extensions, and extending with qubits in increasing order, is lexicographic order.
    fn fill_group(&mut self, j: usize, assigned: usize) {
        if self.done() {
            return;
        }
        let m = self.dims.len();
        let remaining = self.n - assigned;
        if j + 1 == m || remaining == 0 {
            // Closing group j here; later groups stay empty if nothing remains.
            if remaining == 0 {
                self.out.push(
                    Mapping::new(self.groups.clone(), self.dims.to_vec())
                        .expect("enumerated mapping is valid"),
                );
                return;
            }
        } else if remaining <= self.suffix_cap[j + 1] {
            self.fill_group(j + 1, assigned);
        }
        if self.groups[j].len() == self.caps[j] {
            return;
        }
        for q in 0..self.n {
            if self.done() {
                return;
            }
            if self.used[q] {
                continue;
            }
            self.used[q] = true;
            self.groups[j].push(q);
            self.fill_group(j, assigned + 1);
            self.groups[j].pop();
            self.used[q] = false;
        }
    }
}
