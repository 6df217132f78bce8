//! JSON file formats for circuits, mappings, error models, reports and counts.
//!
//! Circuit documents look like
//!
//! ```json
//! {"kind": "qubit", "n": 2, "gates": [{"kind": "h", "qubits": [0]},
//!                                     {"kind": "cnot", "qubits": [0, 1]}]}
//! {"kind": "qudit", "dims": [3, 3], "gates": [{"kind": "local", "qudit": 0, "matrix": ...},
//!     {"kind": "ctrl", "control": 0, "levels": [2], "target": 1, "matrix": ...}]}
//! ```
//!
//! Matrices are row lists of `[re, im]` pairs. For `mcx` the target is the last entry of
//! `qubits`; for `cnot`/`cz` the order is `[control, target]`.

use crate::circuit::{Axis, NamedGate, QubitCircuit, QubitGate, QuditCircuit, QuditGate};
use crate::cost::{ErrorModel, TranspileReport};
use crate::error::{Error, Result};
use crate::mapping::Mapping;
use crate::matrix::Matrix;
use crate::sim::Counts;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCircuit {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<usize>>,
    gates: Vec<RawGate>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGate {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qubits: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qudit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    control: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    levels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<RawMatrix>,
}

/// A parsed circuit document of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum CircuitFile {
    Qubit(QubitCircuit),
    Qudit(QuditCircuit),
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::schema(
            if path.is_empty() { "$".into() } else { path },
            e.into_inner().to_string(),
        )
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn matrix_to_raw(m: &Matrix) -> RawMatrix {
    m.rows()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn matrix_from_raw(raw: RawMatrix, path: &str) -> Result<Matrix> {
    let rows = raw
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).ok_or_else(|| Error::schema(path, "matrix must be square"))
}

fn required<T>(value: Option<T>, path: String, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::schema(path, format!("missing field `{what}`")))
}

fn forbid<T>(value: &Option<T>, path: String, what: &str, kind: &str) -> Result<()> {
    match value {
        Some(_) => Err(Error::schema(
            path,
            format!("field `{what}` not allowed for `{kind}`"),
        )),
        None => Ok(()),
    }
}

fn qubit_gate_from_raw(raw: RawGate, at: &str) -> Result<QubitGate> {
    let p = |field: &str| format!("{at}.{field}");
    let kind = raw.kind.as_str();
    for (v, name) in [
        (&raw.qudit, "qudit"),
        (&raw.control, "control"),
        (&raw.target, "target"),
    ] {
        forbid(v, p(name), name, kind)?;
    }
    forbid(&raw.levels, p("levels"), "levels", kind)?;
    let qubits = required(raw.qubits, p("qubits"), "qubits")?;
    let arity = |k: usize| -> Result<()> {
        if qubits.len() == k {
            Ok(())
        } else {
            Err(Error::schema(
                p("qubits"),
                format!("`{kind}` takes {k} qubit(s), got {}", qubits.len()),
            ))
        }
    };
    let is_rotation = matches!(kind, "rx" | "ry" | "rz");
    if !is_rotation {
        forbid(&raw.angle, p("angle"), "angle", kind)?;
    }
    if kind != "u1" {
        forbid(&raw.matrix, p("matrix"), "matrix", kind)?;
    }
    let named = |gate| -> Result<QubitGate> {
        arity(1)?;
        Ok(QubitGate::Named {
            gate,
            qubit: qubits[0],
        })
    };
    match kind {
        "h" => named(NamedGate::H),
        "x" => named(NamedGate::X),
        "y" => named(NamedGate::Y),
        "z" => named(NamedGate::Z),
        "s" => named(NamedGate::S),
        "t" => named(NamedGate::T),
        "rx" | "ry" | "rz" => {
            arity(1)?;
            let axis = match kind {
                "rx" => Axis::X,
                "ry" => Axis::Y,
                _ => Axis::Z,
            };
            let angle = required(raw.angle, p("angle"), "angle")?;
            Ok(QubitGate::Rotation {
                axis,
                angle,
                qubit: qubits[0],
            })
        }
        "u1" => {
            arity(1)?;
            let matrix =
                matrix_from_raw(required(raw.matrix, p("matrix"), "matrix")?, &p("matrix"))?;
            Ok(QubitGate::Unitary {
                matrix,
                qubit: qubits[0],
            })
        }
        "cnot" => {
            arity(2)?;
            Ok(QubitGate::cnot(qubits[0], qubits[1]))
        }
        "cz" => {
            arity(2)?;
            Ok(QubitGate::cz(qubits[0], qubits[1]))
        }
        "mcx" => {
            if qubits.len() < 2 {
                return Err(Error::schema(
                    p("qubits"),
                    "`mcx` needs at least one control and a target",
                ));
            }
            let (target, controls) = qubits.split_last().unwrap();
            Ok(QubitGate::mcx(controls.to_vec(), *target))
        }
        other => Err(Error::schema(
            p("kind"),
            format!("unknown qubit gate kind `{other}`"),
        )),
    }
}

fn qubit_gate_to_raw(g: &QubitGate) -> RawGate {
    let mut raw = RawGate {
        qubits: Some(g.qubits()),
        ..RawGate::default()
    };
    raw.kind = match g {
        QubitGate::Named { gate, .. } => gate.name().to_string(),
        QubitGate::Rotation { axis, angle, .. } => {
            raw.angle = Some(*angle);
            match axis {
                Axis::X => "rx",
                Axis::Y => "ry",
                Axis::Z => "rz",
            }
            .to_string()
        }
        QubitGate::Unitary { matrix, .. } => {
            raw.matrix = Some(matrix_to_raw(matrix));
            "u1".to_string()
        }
        QubitGate::Cnot { .. } => "cnot".to_string(),
        QubitGate::Cz { .. } => "cz".to_string(),
        QubitGate::Mcx { .. } => "mcx".to_string(),
    };
    raw
}

fn qudit_gate_from_raw(raw: RawGate, at: &str) -> Result<QuditGate> {
    let p = |field: &str| format!("{at}.{field}");
    let kind = raw.kind.as_str();
    forbid(&raw.qubits, p("qubits"), "qubits", kind)?;
    forbid(&raw.angle, p("angle"), "angle", kind)?;
    match kind {
        "local" => {
            forbid(&raw.control, p("control"), "control", kind)?;
            forbid(&raw.target, p("target"), "target", kind)?;
            forbid(&raw.levels, p("levels"), "levels", kind)?;
            let qudit = required(raw.qudit, p("qudit"), "qudit")?;
            let matrix =
                matrix_from_raw(required(raw.matrix, p("matrix"), "matrix")?, &p("matrix"))?;
            Ok(QuditGate::Local { qudit, matrix })
        }
        "ctrl" => {
            forbid(&raw.qudit, p("qudit"), "qudit", kind)?;
            Ok(QuditGate::Controlled {
                control: required(raw.control, p("control"), "control")?,
                levels: required(raw.levels, p("levels"), "levels")?,
                target: required(raw.target, p("target"), "target")?,
                matrix: matrix_from_raw(
                    required(raw.matrix, p("matrix"), "matrix")?,
                    &p("matrix"),
                )?,
            })
        }
        other => Err(Error::schema(
            p("kind"),
            format!("unknown qudit gate kind `{other}`"),
        )),
    }
}

fn qudit_gate_to_raw(g: &QuditGate) -> RawGate {
    match g {
        QuditGate::Local { qudit, matrix } => RawGate {
            kind: "local".into(),
            qudit: Some(*qudit),
            matrix: Some(matrix_to_raw(matrix)),
            ..RawGate::default()
        },
        QuditGate::Controlled {
            control,
            levels,
            target,
            matrix,
        } => RawGate {
            kind: "ctrl".into(),
            control: Some(*control),
            levels: Some(levels.clone()),
            target: Some(*target),
            matrix: Some(matrix_to_raw(matrix)),
            ..RawGate::default()
        },
    }
}

/// Re-labels a validation error with the JSON path of the offending gate.
fn validation_to_schema(e: Error) -> Error {
    let gate = match &e {
        Error::IndexOutOfRange { gate, .. }
        | Error::DuplicateIndex { gate, .. }
        | Error::NonUnitaryMatrix { gate, .. }
        | Error::InvalidGate { gate, .. } => Some(*gate),
        _ => None,
    };
    match gate {
        Some(g) => Error::schema(format!("gates[{g}]"), e.to_string()),
        None => Error::schema("$", e.to_string()),
    }
}

/// Parses and validates a circuit document of either kind.
pub fn parse_circuit(text: &str) -> Result<CircuitFile> {
    let raw: RawCircuit = from_json(text)?;
    match raw.kind.as_str() {
        "qubit" => {
            forbid(&raw.dims, "dims".into(), "dims", "qubit")?;
            let n = required(raw.n, "n".into(), "n")?;
            let gates = raw
                .gates
                .into_iter()
                .enumerate()
                .map(|(i, g)| qubit_gate_from_raw(g, &format!("gates[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let c = QubitCircuit::with_gates(n, gates);
            c.validate().map_err(validation_to_schema)?;
            Ok(CircuitFile::Qubit(c))
        }
        "qudit" => {
            forbid(&raw.n, "n".into(), "n", "qudit")?;
            let dims = required(raw.dims, "dims".into(), "dims")?;
            let gates = raw
                .gates
                .into_iter()
                .enumerate()
                .map(|(i, g)| qudit_gate_from_raw(g, &format!("gates[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let c = QuditCircuit::with_gates(dims, gates);
            c.validate().map_err(validation_to_schema)?;
            Ok(CircuitFile::Qudit(c))
        }
        other => Err(Error::schema(
            "kind",
            format!("unknown circuit kind `{other}`"),
        )),
    }
}

pub fn parse_qubit_circuit(text: &str) -> Result<QubitCircuit> {
    match parse_circuit(text)? {
        CircuitFile::Qubit(c) => Ok(c),
        CircuitFile::Qudit(_) => Err(Error::schema("kind", "expected a qubit circuit")),
    }
}

pub fn parse_qudit_circuit(text: &str) -> Result<QuditCircuit> {
    match parse_circuit(text)? {
        CircuitFile::Qudit(c) => Ok(c),
        CircuitFile::Qubit(_) => Err(Error::schema("kind", "expected a qudit circuit")),
    }
}

pub fn qubit_circuit_to_json(c: &QubitCircuit) -> String {
    to_json(&RawCircuit {
        kind: "qubit".into(),
        n: Some(c.n),
        dims: None,
        gates: c.gates.iter().map(qubit_gate_to_raw).collect(),
    })
}

pub fn qudit_circuit_to_json(c: &QuditCircuit) -> String {
    to_json(&RawCircuit {
        kind: "qudit".into(),
        n: None,
        dims: Some(c.dims.clone()),
        gates: c.gates.iter().map(qudit_gate_to_raw).collect(),
    })
}

pub fn circuit_to_json(c: &CircuitFile) -> String {
    match c {
        CircuitFile::Qubit(c) => qubit_circuit_to_json(c),
        CircuitFile::Qudit(c) => qudit_circuit_to_json(c),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMapping {
    mapping_opt: Vec<Vec<usize>>,
}

/// Parses `{"mapping_opt": [[...], ...]}` against a register.
pub fn parse_mapping(text: &str, dims: &[usize]) -> Result<Mapping> {
    let raw: RawMapping = from_json(text)?;
    Mapping::new(raw.mapping_opt, dims.to_vec())
        .map_err(|e| Error::schema("mapping_opt", e.to_string()))
}

/// Groups only; the caller supplies the register.
pub fn parse_mapping_groups(text: &str) -> Result<Vec<Vec<usize>>> {
    let raw: RawMapping = from_json(text)?;
    Ok(raw.mapping_opt)
}

pub fn mapping_to_json(m: &Mapping) -> String {
    to_json(&RawMapping {
        mapping_opt: m.groups().to_vec(),
    })
}

pub fn parse_error_model(text: &str) -> Result<ErrorModel> {
    let em: ErrorModel = from_json(text)?;
    em.validate()?;
    Ok(em)
}

pub fn report_to_json(r: &TranspileReport) -> String {
    to_json(r)
}

pub fn parse_report(text: &str) -> Result<TranspileReport> {
    from_json(text)
}

pub fn counts_to_json(c: &Counts) -> String {
    to_json(c)
}

pub fn parse_counts(text: &str) -> Result<Counts> {
    let c: Counts = from_json(text)?;
    if c.counts.values().sum::<u64>() != c.shots {
        return Err(Error::schema("counts", "counts do not sum to shots"));
    }
    Ok(c)
}

/// Raw qudit counts and their decoded qubit counterpart, written together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodedCounts {
    pub qudit_res: Counts,
    pub qubit_res: Counts,
}

pub fn decoded_counts_to_json(c: &DecodedCounts) -> String {
    to_json(c)
}

pub fn parse_decoded_counts(text: &str) -> Result<DecodedCounts> {
    from_json(text)
}
