//! Run orchestration: operator-pair construction from a source spec,
//! repeat fan-out across worker threads, and the report/trace formats.

use std::fmt::Write as _;

use serde::Serialize;

use adjmm::diagnostics::{eigen_residual, EstimateReport, StopReason, TraceRecord};
use adjmm::operator::{AdjointOracle, BlackBoxPair, DenseMatrix, ForwardOracle};
use adjmm::tomo::{self, ProjectorGeometry};
use adjmm::{Algorithm, RunConfig};

/// A failed command: message plus the process exit code.
/// 2 is a configuration error, 3 a dimension error, 1 anything else.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<adjmm::Error> for Failure {
    fn from(err: adjmm::Error) -> Self {
        use adjmm::Error::*;
        let code = match err {
            DimensionMismatch { .. } | OracleDimsDisagree { .. } | DimensionTooSmall { .. }
            | BadShape { .. } => 3,
            InvalidConfig(_) | InvalidGeometry(_) | UnknownField(_)
            | FieldNotRecorded { .. } => 2,
            _ => 1,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

/// Reconstructible description of an operator pair; each repeat builds
/// its own instance so call counters start at zero.
#[derive(Clone)]
pub enum PairSpec {
    /// A dense, V dense; V* is the transpose of V.
    Dense { a: DenseMatrix, v: DenseMatrix },
    /// Tomography projector with exact or pixel-driven backprojector.
    Tomo {
        geom: ProjectorGeometry,
        mismatched: bool,
    },
}

impl PairSpec {
    pub fn build_pair(&self) -> Result<BlackBoxPair, Failure> {
        match self {
            PairSpec::Dense { a, v } => {
                BlackBoxPair::from_dense(a.clone(), v.clone()).map_err(Failure::from)
            }
            PairSpec::Tomo { geom, mismatched } => if *mismatched {
                tomo::mismatched_pair(geom)
            } else {
                tomo::matched_pair(geom)
            }
            .map_err(Failure::from),
        }
    }

    /// The two oracles separately, for the dot-product adjointness test.
    pub fn build_oracles(
        &self,
    ) -> Result<(Box<dyn ForwardOracle>, Box<dyn AdjointOracle>), Failure> {
        // Rebuild through a pair-shaped constructor path is not possible
        // (BlackBoxPair owns its boxes), so construct fresh oracles here.
        match self {
            PairSpec::Dense { a, v } => Ok((Box::new(a.clone()), Box::new(v.clone()))),
            PairSpec::Tomo { geom, mismatched } => {
                let weights = tomo::shared_line_model(geom).map_err(Failure::from)?;
                let forward: Box<dyn ForwardOracle> =
                    Box::new(tomo::TomoForward::new(std::sync::Arc::clone(&weights)));
                let adjoint: Box<dyn AdjointOracle> = if *mismatched {
                    Box::new(tomo::TomoMismatchedAdjoint::new(geom.clone()))
                } else {
                    Box::new(tomo::TomoExactAdjoint::new(weights))
                };
                Ok((forward, adjoint))
            }
        }
    }

    /// Dense A - V when both operators are materialized, for residual
    /// diagnostics; None for black-box sources.
    pub fn dense_difference(&self) -> Option<DenseMatrix> {
        match self {
            PairSpec::Dense { a, v } => a.sub(v).ok(),
            PairSpec::Tomo { .. } => None,
        }
    }

    /// Dense matrix of the forward operator, for scale computations.
    pub fn forward_dense(&self) -> Result<DenseMatrix, Failure> {
        match self {
            PairSpec::Dense { a, .. } => Ok(a.clone()),
            PairSpec::Tomo { geom, .. } => Ok(tomo::build_line_model(geom)
                .map_err(Failure::from)?
                .materialize_dense()),
        }
    }
}

pub struct RepeatOutcome {
    pub report: EstimateReport,
    pub n_forward: u64,
    pub n_adjoint: u64,
}

fn run_single(
    spec: &PairSpec,
    algorithm: Algorithm,
    base: &RunConfig,
    repeat: usize,
    with_residuals: bool,
) -> Result<RepeatOutcome, Failure> {
    let pair = spec.build_pair()?;
    let config = base.clone().with_seed(base.seed ^ repeat as u64);
    let diff = if with_residuals {
        spec.dense_difference()
    } else {
        None
    };
    let report = match (algorithm, &diff) {
        (Algorithm::OneStep, Some(diff)) => adjmm::run_one_observed(&pair, &config, |it, rec| {
            rec.residual = Some(eigen_residual(diff, it));
        }),
        (Algorithm::OneStep, None) => adjmm::run_one(&pair, &config),
        (Algorithm::TwoStep, Some(diff)) => adjmm::run_two_observed(&pair, &config, |it, rec| {
            rec.residual = Some(eigen_residual(diff, it));
        }),
        (Algorithm::TwoStep, None) => adjmm::run_two(&pair, &config),
    }
    .map_err(Failure::from)?;
    let (n_forward, n_adjoint) = pair.call_counts();
    Ok(RepeatOutcome {
        report,
        n_forward,
        n_adjoint,
    })
}

/// Runs `repeats` independent estimations (seed XOR repeat index), fanned
/// out over `ADJMM_THREADS` workers; the result order is by repeat index
/// regardless of scheduling.
pub fn run_repeats(
    spec: &PairSpec,
    algorithm: Algorithm,
    base: &RunConfig,
    repeats: usize,
    with_residuals: bool,
) -> Result<Vec<RepeatOutcome>, Failure> {
    let threads = std::env::var("ADJMM_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(1)
        .clamp(1, 64);

    if threads == 1 || repeats == 1 {
        return (0..repeats)
            .map(|r| run_single(spec, algorithm, base, r, with_residuals))
            .collect();
    }

    let mut slots: Vec<Option<Result<RepeatOutcome, Failure>>> = Vec::new();
    slots.resize_with(repeats, || None);
    let slot_refs: Vec<_> = slots.iter_mut().collect();
    std::thread::scope(|scope| {
        // Striped assignment: worker w takes repeats w, w+threads, ...
        let mut remaining = slot_refs;
        let mut worker_slots: Vec<Vec<(usize, &mut Option<_>)>> =
            (0..threads).map(|_| Vec::new()).collect();
        let mut index = 0;
        while !remaining.is_empty() {
            let slot = remaining.remove(0);
            worker_slots[index % threads].push((index, slot));
            index += 1;
        }
        for chunk in worker_slots {
            scope.spawn(move || {
                for (repeat, slot) in chunk {
                    *slot = Some(run_single(spec, algorithm, base, repeat, with_residuals));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.expect("every repeat was assigned to a worker"))
        .collect()
}

/// One JSON line per repeat; field order is part of the interface.
#[derive(Serialize)]
pub struct JsonReport {
    pub estimate: f64,
    pub iterations: usize,
    pub stop_reason: StopReason,
    pub n_forward: u64,
    pub n_adjoint: u64,
    pub seed: u64,
}

impl JsonReport {
    pub fn from_report(outcome: &RepeatOutcome, seed: u64) -> Self {
        Self {
            estimate: outcome.report.estimate,
            iterations: outcome.report.iterations,
            stop_reason: outcome.report.stop_reason,
            n_forward: outcome.n_forward,
            n_adjoint: outcome.n_adjoint,
            seed,
        }
    }
}

fn optional(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// Fixed trace schema; absent columns stay empty (the one-step algorithm
/// leaves c, d and xi empty).
pub fn write_trace_csv<'a>(out: &mut String, rows: impl Iterator<Item = &'a TraceRecord>) {
    out.push_str("iter,objective,a,b,c,d,tau,xi,residual,n_forward,n_adjoint\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.iter,
            r.objective,
            r.a,
            r.b,
            optional(r.c),
            optional(r.d),
            r.tau,
            optional(r.xi),
            optional(r.residual),
            r.n_forward,
            r.n_adjoint
        )
        .expect("writing to a String cannot fail");
    }
}
