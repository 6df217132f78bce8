//! Qubit and qudit circuit representations.
//!
//! Qubit circuits are the hardware-agnostic input; qudit circuits use the native set of
//! single-qudit unitaries plus level-set-controlled unitaries acting on a second qudit.
//! Dense unitaries are available for small registers and serve as test oracles.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, ONE, ZERO};
use crate::register;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Tolerance on `max|U^dag U - I|` for matrices supplied by callers.
pub const INPUT_UNITARY_TOL: f64 = 1e-10;
/// Tolerance on composed products.
pub const PRODUCT_UNITARY_TOL: f64 = 1e-9;
/// Largest qubit count for which [`qubit_unitary`] builds a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest total dimension for which [`qudit_unitary`] builds a dense matrix.
pub const MAX_DENSE_DIMENSION: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGate {
    H,
    X,
    Y,
    Z,
    S,
    T,
}

impl NamedGate {
    pub fn matrix(self) -> Matrix {
        let h = FRAC_1_SQRT_2;
        let i = Complex64::i();
        match self {
            NamedGate::H => Matrix::from_real_rows(&[&[h, h], &[h, -h]]).unwrap(),
            NamedGate::X => Matrix::permutation(&[1, 0]),
            NamedGate::Y => Matrix::from_rows(vec![vec![ZERO, -i], vec![i, ZERO]]).unwrap(),
            NamedGate::Z => Matrix::diagonal(&[ONE, -ONE]),
            NamedGate::S => Matrix::diagonal(&[ONE, i]),
            NamedGate::T => {
                Matrix::diagonal(&[ONE, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)])
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedGate::H => "h",
            NamedGate::X => "x",
            NamedGate::Y => "y",
            NamedGate::Z => "z",
            NamedGate::S => "s",
            NamedGate::T => "t",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// `exp(-i angle P / 2)` for the Pauli `P` of `axis`.
pub fn rotation_matrix(axis: Axis, angle: f64) -> Matrix {
    let c = Complex64::new((angle / 2.0).cos(), 0.0);
    let s = (angle / 2.0).sin();
    match axis {
        Axis::X => {
            let m = Complex64::new(0.0, -s);
            Matrix::from_rows(vec![vec![c, m], vec![m, c]]).unwrap()
        }
        Axis::Y => {
            let s = Complex64::new(s, 0.0);
            Matrix::from_rows(vec![vec![c, -s], vec![s, c]]).unwrap()
        }
        Axis::Z => Matrix::diagonal(&[
            Complex64::from_polar(1.0, -angle / 2.0),
            Complex64::from_polar(1.0, angle / 2.0),
        ]),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QubitGate {
    Named {
        gate: NamedGate,
        qubit: usize,
    },
    Rotation {
        axis: Axis,
        angle: f64,
        qubit: usize,
    },
    /// Arbitrary single-qubit unitary.
    Unitary {
        matrix: Matrix,
        qubit: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Cz {
        control: usize,
        target: usize,
    },
    Mcx {
        controls: Vec<usize>,
        target: usize,
    },
}

impl QubitGate {
    pub fn h(qubit: usize) -> Self {
        QubitGate::Named {
            gate: NamedGate::H,
            qubit,
        }
    }
    pub fn x(qubit: usize) -> Self {
        QubitGate::Named {
            gate: NamedGate::X,
            qubit,
        }
    }
    pub fn t(qubit: usize) -> Self {
        QubitGate::Named {
            gate: NamedGate::T,
            qubit,
        }
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        QubitGate::Cnot { control, target }
    }
    pub fn cz(control: usize, target: usize) -> Self {
        QubitGate::Cz { control, target }
    }
    pub fn mcx(controls: impl Into<Vec<usize>>, target: usize) -> Self {
        QubitGate::Mcx {
            controls: controls.into(),
            target,
        }
    }

    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            QubitGate::Named { qubit, .. }
            | QubitGate::Rotation { qubit, .. }
            | QubitGate::Unitary { qubit, .. } => vec![*qubit],
            QubitGate::Cnot { control, target } | QubitGate::Cz { control, target } => {
                vec![*control, *target]
            }
            QubitGate::Mcx { controls, target } => {
                let mut q = controls.clone();
                q.push(*target);
                q
            }
        }
    }

    pub fn is_single_qubit(&self) -> bool {
        matches!(
            self,
            QubitGate::Named { .. } | QubitGate::Rotation { .. } | QubitGate::Unitary { .. }
        )
    }

    /// The 2x2 matrix of a single-qubit gate.
    pub fn single_qubit_matrix(&self) -> Option<Matrix> {
        match self {
            QubitGate::Named { gate, .. } => Some(gate.matrix()),
            QubitGate::Rotation { axis, angle, .. } => Some(rotation_matrix(*axis, *angle)),
            QubitGate::Unitary { matrix, .. } => Some(matrix.clone()),
            _ => None,
        }
    }

    /// Decomposes the gate as (controls, target, 2x2 matrix applied when every control is 1).
    pub fn as_controlled(&self) -> (Vec<usize>, usize, Matrix) {
        match self {
            QubitGate::Named { qubit, .. }
            | QubitGate::Rotation { qubit, .. }
            | QubitGate::Unitary { qubit, .. } => {
                (Vec::new(), *qubit, self.single_qubit_matrix().unwrap())
            }
            QubitGate::Cnot { control, target } => (vec![*control], *target, NamedGate::X.matrix()),
            QubitGate::Cz { control, target } => (vec![*control], *target, NamedGate::Z.matrix()),
            QubitGate::Mcx { controls, target } => {
                (controls.clone(), *target, NamedGate::X.matrix())
            }
        }
    }

    /// Checks the gate against a register of `n` qubits; errors carry gate position 0.
    pub fn validate(&self, n: usize) -> Result<()> {
        if let QubitGate::Mcx { controls, .. } = self {
            if controls.is_empty() {
                return Err(Error::InvalidGate {
                    gate: 0,
                    reason: "mcx needs at least one control".into(),
                });
            }
        }
        let qubits = self.qubits();
        for (k, &q) in qubits.iter().enumerate() {
            if q >= n {
                return Err(Error::IndexOutOfRange {
                    gate: 0,
                    index: q,
                    size: n,
                });
            }
            if qubits[..k].contains(&q) {
                return Err(Error::DuplicateIndex { gate: 0, index: q });
            }
        }
        match self {
            QubitGate::Unitary { matrix, .. } => check_unitary(matrix, 2),
            QubitGate::Rotation { angle, .. } if !angle.is_finite() => Err(Error::InvalidGate {
                gate: 0,
                reason: "rotation angle is not finite".into(),
            }),
            _ => Ok(()),
        }
    }
}

fn check_unitary(matrix: &Matrix, dim: usize) -> Result<()> {
    if matrix.dim() != dim {
        return Err(Error::InvalidGate {
            gate: 0,
            reason: format!("matrix is {0}x{0}, expected {dim}x{dim}", matrix.dim()),
        });
    }
    let deviation = matrix.unitarity_deviation();
    if !(deviation <= INPUT_UNITARY_TOL) {
        return Err(Error::NonUnitaryMatrix { gate: 0, deviation });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitCircuit {
    pub n: usize,
    pub gates: Vec<QubitGate>,
}

impl QubitCircuit {
    pub fn new(n: usize) -> Self {
        QubitCircuit {
            n,
            gates: Vec::new(),
        }
    }

    pub fn with_gates(n: usize, gates: Vec<QubitGate>) -> Self {
        QubitCircuit { n, gates }
    }

    pub fn push(&mut self, gate: QubitGate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    /// Returns the first violated invariant, tagged with its gate position.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidRegister("qubit circuit needs n >= 1".into()));
        }
        for (pos, gate) in self.gates.iter().enumerate() {
            gate.validate(self.n).map_err(|e| e.at_gate(pos))?;
        }
        Ok(())
    }

    /// Largest control count over the circuit's MCX gates.
    pub fn max_mcx_controls(&self) -> usize {
        self.gates
            .iter()
            .filter_map(|g| match g {
                QubitGate::Mcx { controls, .. } => Some(controls.len()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn two_qubit_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_single_qubit()).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuditGate {
    /// Arbitrary unitary on one qudit.
    Local { qudit: usize, matrix: Matrix },
    /// Applies `matrix` to `target` when `control` is in one of `levels`.
    Controlled {
        control: usize,
        levels: Vec<usize>,
        target: usize,
        matrix: Matrix,
    },
}

impl QuditGate {
    pub fn target(&self) -> usize {
        match self {
            QuditGate::Local { qudit, .. } => *qudit,
            QuditGate::Controlled { target, .. } => *target,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        match self {
            QuditGate::Local { matrix, .. } | QuditGate::Controlled { matrix, .. } => matrix,
        }
    }

    pub fn is_two_qudit(&self) -> bool {
        matches!(self, QuditGate::Controlled { .. })
    }

    pub fn validate(&self, dims: &[usize]) -> Result<()> {
        let m = dims.len();
        let in_range = |j: usize| {
            if j < m {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange {
                    gate: 0,
                    index: j,
                    size: m,
                })
            }
        };
        match self {
            QuditGate::Local { qudit, matrix } => {
                in_range(*qudit)?;
                check_unitary(matrix, dims[*qudit])
            }
            QuditGate::Controlled {
                control,
                levels,
                target,
                matrix,
            } => {
                in_range(*control)?;
                in_range(*target)?;
                if control == target {
                    return Err(Error::DuplicateIndex {
                        gate: 0,
                        index: *target,
                    });
                }
                if levels.is_empty() {
                    return Err(Error::InvalidGate {
                        gate: 0,
                        reason: "control level set is empty".into(),
                    });
                }
                for (k, &l) in levels.iter().enumerate() {
                    if l >= dims[*control] {
                        return Err(Error::InvalidGate {
                            gate: 0,
                            reason: format!(
                                "control level {l} out of range for dimension {}",
                                dims[*control]
                            ),
                        });
                    }
                    if levels[..k].contains(&l) {
                        return Err(Error::InvalidGate {
                            gate: 0,
                            reason: format!("control level {l} listed twice"),
                        });
                    }
                }
                check_unitary(matrix, dims[*target])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuditCircuit {
    pub dims: Vec<usize>,
    pub gates: Vec<QuditGate>,
}

impl QuditCircuit {
    pub fn new(dims: Vec<usize>) -> Self {
        QuditCircuit {
            dims,
            gates: Vec::new(),
        }
    }

    pub fn with_gates(dims: Vec<usize>, gates: Vec<QuditGate>) -> Self {
        QuditCircuit { dims, gates }
    }

    pub fn validate(&self) -> Result<()> {
        register::check_dims(&self.dims)?;
        for (pos, gate) in self.gates.iter().enumerate() {
            gate.validate(&self.dims).map_err(|e| e.at_gate(pos))?;
        }
        Ok(())
    }

    pub fn total_dimension(&self) -> Option<usize> {
        register::total_dimension(&self.dims)
    }
}

pub fn validate_qubit_circuit(c: &QubitCircuit) -> Result<()> {
    c.validate()
}

/// Dense `2^n x 2^n` unitary `U_B ... U_1`; qubit 0 is the most significant bit.
pub fn qubit_unitary(c: &QubitCircuit) -> Result<Matrix> {
    if c.n > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge {
            dimension: 1usize.checked_shl(c.n as u32).unwrap_or(usize::MAX),
            limit: 1 << MAX_DENSE_QUBITS,
        });
    }
    c.validate()?;
    let n = c.n;
    let dim = 1usize << n;
    let mut u = Matrix::identity(dim);
    for gate in &c.gates {
        let (controls, target, m) = gate.as_controlled();
        let control_mask = controls
            .iter()
            .fold(0usize, |acc, &q| acc | 1 << (n - 1 - q));
        let target_bit = 1usize << (n - 1 - target);
        for r0 in 0..dim {
            if r0 & target_bit != 0 || r0 & control_mask != control_mask {
                continue;
            }
            let r1 = r0 | target_bit;
            for col in 0..dim {
                let a = u[(r0, col)];
                let b = u[(r1, col)];
                u[(r0, col)] = m[(0, 0)] * a + m[(0, 1)] * b;
                u[(r1, col)] = m[(1, 0)] * a + m[(1, 1)] * b;
            }
        }
    }
    Ok(u)
}

/// Dense `D x D` unitary of a qudit circuit, `D = prod(dims)`.
pub fn qudit_unitary(c: &QuditCircuit) -> Result<Matrix> {
    c.validate()?;
    let dim = match c.total_dimension() {
        Some(d) if d <= MAX_DENSE_DIMENSION => d,
        other => {
            return Err(Error::TooLarge {
                dimension: other.unwrap_or(usize::MAX),
                limit: MAX_DENSE_DIMENSION,
            })
        }
    };
    let dims = &c.dims;
    let mut u = Matrix::identity(dim);
    let mut rows = Vec::new();
    let mut mixed = Vec::new();
    for gate in &c.gates {
        let target = gate.target();
        let d = dims[target];
        let m = gate.matrix();
        for base in 0..dim {
            let mut digits = register::index_to_digits(base, dims);
            if digits[target] != 0 {
                continue;
            }
            if let QuditGate::Controlled {
                control, levels, ..
            } = gate
            {
                if !levels.contains(&digits[*control]) {
                    continue;
                }
            }
            rows.clear();
            for level in 0..d {
                digits[target] = level;
                rows.push(register::digits_to_index(&digits, dims));
            }
            for col in 0..dim {
                mixed.clear();
                for i in 0..d {
                    let mut acc = ZERO;
                    for (k, &r) in rows.iter().enumerate() {
                        acc += m[(i, k)] * u[(r, col)];
                    }
                    mixed.push(acc);
                }
                for (&r, &v) in rows.iter().zip(&mixed) {
                    u[(r, col)] = v;
                }
            }
        }
    }
    Ok(u)
}
