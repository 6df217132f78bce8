//! Exhaustive mapping search maximising the estimated fidelity.

use super::baseline::{baseline_qubit_lowering, required_ancillas};
use super::transpile;
use crate::circuit::{QubitCircuit, QuditCircuit};
use crate::cost::{compare, estimate_fidelity, ErrorModel, FidelityEstimate, TranspileReport};
use crate::error::{Error, Result};
use crate::mapping::{check_compatible, enumerate_mappings, trivial_mapping, Mapping};
use rayon::prelude::*;

pub const DEFAULT_SEARCH_LIMIT: usize = 10_000;

/// Relative gap below which two fidelities count as tied.
const FIDELITY_TIE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub mapping: Mapping,
    pub circuit: QuditCircuit,
    pub report: TranspileReport,
    /// Candidates that lowered successfully.
    pub feasible: usize,
    pub evaluated: usize,
}

struct Candidate {
    index: usize,
    circuit: QuditCircuit,
    fidelity: FidelityEstimate,
}

/// True when `a` should replace the incumbent `b`.
fn beats(a: &Candidate, b: &Candidate) -> bool {
    let (fa, fb) = (a.fidelity.value, b.fidelity.value);
    let tol = FIDELITY_TIE_RTOL * fa.abs().max(fb.abs());
    if (fa - fb).abs() > tol {
        return fa > fb;
    }
    if a.fidelity.two_qudit_gates != b.fidelity.two_qudit_gates {
        return a.fidelity.two_qudit_gates < b.fidelity.two_qudit_gates;
    }
    a.index < b.index
}

fn baseline_count(c: &QubitCircuit) -> Option<usize> {
    baseline_qubit_lowering(c, required_ancillas(c))
        .ok()
        .map(|b| b.two_qubit_gates())
}

/// Fidelity of the one-qubit-per-qudit mapping, when the register has enough qudits and
/// the circuit lowers under it.
fn trivial_estimate(c: &QubitCircuit, dims: &[usize], em: &ErrorModel) -> Option<FidelityEstimate> {
    let m = trivial_mapping(c.n, dims).ok()?;
    let q = transpile(c, &m).ok()?;
    Some(estimate_fidelity(&q, em))
}

/// Transpiles under a fixed mapping and assembles the comparison report.
pub fn evaluate_mapping(
    c: &QubitCircuit,
    mapping: &Mapping,
    em: &ErrorModel,
) -> Result<(QuditCircuit, TranspileReport)> {
    em.validate()?;
    let q = transpile(c, mapping)?;
    let opt = estimate_fidelity(&q, em);
    let trivial = trivial_estimate(c, mapping.dims(), em);
    let report = compare(mapping, &opt, trivial.as_ref(), baseline_count(c));
    Ok((q, report))
}

/// Evaluates every enumerated mapping (up to `limit`) plus the trivial mapping and keeps
/// the one with the highest estimated fidelity. Ties go to fewer two-qudit gates, then to
/// the earlier candidate; the result does not depend on thread scheduling.
pub fn select_mapping(
    c: &QubitCircuit,
    dims: &[usize],
    em: &ErrorModel,
    limit: usize,
) -> Result<SearchOutcome> {
    c.validate()?;
    em.validate()?;
    check_compatible(c.n, dims)?;
    let mut candidates = enumerate_mappings(c.n, dims, limit)?;
    if let Ok(t) = trivial_mapping(c.n, dims) {
        if !candidates.contains(&t) {
            candidates.push(t);
        }
    }
    let evaluated = candidates.len();

    let lowered: Vec<Option<Candidate>> = candidates
        .par_iter()
        .enumerate()
        .map(|(index, m)| {
            transpile(c, m).ok().map(|circuit| {
                let fidelity = estimate_fidelity(&circuit, em);
                Candidate {
                    index,
                    circuit,
                    fidelity,
                }
            })
        })
        .collect();

    let feasible = lowered.iter().flatten().count();
    let best = lowered
        .into_iter()
        .flatten()
        .reduce(|best, cand| if beats(&cand, &best) { cand } else { best })
        .ok_or(Error::NoFeasibleMapping { tried: evaluated })?;

    let mapping = candidates.swap_remove(best.index);
    let trivial = trivial_estimate(c, dims, em);
    let report = compare(
        &mapping,
        &best.fidelity,
        trivial.as_ref(),
        baseline_count(c),
    );
    Ok(SearchOutcome {
        mapping,
        circuit: best.circuit,
        report,
        feasible,
        evaluated,
    })
}
