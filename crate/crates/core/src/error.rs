use thiserror::Error;

/// Everything that can go wrong between parsing a circuit and decoding its counts.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gate {gate}: index {index} out of range for register of size {size}")]
    IndexOutOfRange {
        gate: usize,
        index: usize,
        size: usize,
    },
    #[error("gate {gate}: index {index} used more than once")]
    DuplicateIndex { gate: usize, index: usize },
    #[error("gate {gate}: matrix is not unitary (max |U^dag U - I| = {deviation:e})")]
    NonUnitaryMatrix { gate: usize, deviation: f64 },
    #[error("gate {gate}: {reason}")]
    InvalidGate { gate: usize, reason: String },
    #[error("invalid register: {0}")]
    InvalidRegister(String),
    #[error("register of dimension {dimension} exceeds the limit of {limit}")]
    TooLarge { dimension: usize, limit: usize },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid mapping: {0}")]
    InvalidMapping(String),
    #[error("digit string {digits:?} is not in the image of the mapping")]
    NotInImage { digits: Vec<usize> },
    #[error("{qubits} qubits need at least {qubits} qudits for the trivial mapping, got {qudits}")]
    InsufficientQudits { qubits: usize, qudits: usize },
    #[error("register with {states} basis states cannot hold {qubits} qubits")]
    Incompatible { qubits: usize, states: u128 },
    #[error("gate {gate}: not enough free levels to lower multi-controlled X ({reason})")]
    InsufficientFreeLevels { gate: usize, reason: String },
    #[error("gate {gate}: {reason}")]
    NotSupported { gate: usize, reason: String },
    #[error("gate {gate}: multi-controlled X with {controls} controls needs {needed} clean ancillas, got {available}")]
    InsufficientAncillas {
        gate: usize,
        controls: usize,
        needed: usize,
        available: usize,
    },
    #[error("no candidate mapping could be lowered ({tried} tried)")]
    NoFeasibleMapping { tried: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{} outcome(s) outside the image of the mapping: {}", .violations.len(), format_violations(.violations))]
    SupportViolation { violations: Vec<(String, u64)> },
    #[error("io error: {0}")]
    Io(String),
}

fn format_violations(v: &[(String, u64)]) -> String {
    v.iter()
        .map(|(k, c)| format!("{k} x{c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// True for failures caused by the register or mapping being unable to host the circuit.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::Incompatible { .. }
                | Error::InsufficientFreeLevels { .. }
                | Error::NoFeasibleMapping { .. }
                | Error::InsufficientQudits { .. }
        )
    }

    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Rewrites the gate position carried by positional variants.
    pub(crate) fn at_gate(self, position: usize) -> Self {
        match self {
            Error::IndexOutOfRange { index, size, .. } => Error::IndexOutOfRange {
                gate: position,
                index,
                size,
            },
            Error::DuplicateIndex { index, .. } => Error::DuplicateIndex {
                gate: position,
                index,
            },
            Error::NonUnitaryMatrix { deviation, .. } => Error::NonUnitaryMatrix {
                gate: position,
                deviation,
            },
            Error::InvalidGate { reason, .. } => Error::InvalidGate {
                gate: position,
                reason,
            },
            Error::InsufficientFreeLevels { reason, .. } => Error::InsufficientFreeLevels {
                gate: position,
                reason,
            },
            Error::NotSupported { reason, .. } => Error::NotSupported {
                gate: position,
                reason,
            },
            Error::InsufficientAncillas {
                controls,
                needed,
                available,
                ..
            } => Error::InsufficientAncillas {
                gate: position,
                controls,
                needed,
                available,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
