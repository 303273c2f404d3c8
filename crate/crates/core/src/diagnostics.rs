//! Per-iteration traces, run reports and convergence-rate instrumentation.
//!
//! The eigen-residual and angle-defect diagnostics need products that the
//! black-box oracles cannot provide ((A-V)v requires V forward, (A-V)*u
//! requires A adjoint), so they operate on a densely materialized
//! difference matrix: a test-bench feature, not a production path.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm};
use crate::operator::DenseMatrix;
use crate::sampling::IteratePair;

/// One row of the per-iteration log. The one-step estimator leaves c, d
/// and xi unset.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    pub iter: usize,
    pub objective: f64,
    pub a: f64,
    pub b: f64,
    pub c: Option<f64>,
    pub d: Option<f64>,
    pub tau: f64,
    pub xi: Option<f64>,
    pub residual: Option<f64>,
    pub n_forward: u64,
    pub n_adjoint: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Tolerance,
    MaxIters,
    AdjointPair,
}

/// Outcome of a full estimation run.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    /// Final objective value, the estimate of ||A - V||.
    pub estimate: f64,
    pub iterations: usize,
    pub stop_reason: StopReason,
    pub final_pair: Option<IteratePair>,
    pub trace: Vec<TraceRecord>,
}

/// ||D* D v - a^2 v|| for the dense difference D = A - V, the
/// eigen-equation residual at the current iterate.
pub fn eigen_residual(diff: &DenseMatrix, it: &IteratePair) -> f64 {
    let dv = diff.forward(&it.v).expect("iterate matches diff dims");
    let dtdv = diff.adjoint(&dv).expect("iterate matches diff dims");
    let a2 = it.objective * it.objective;
    let r: Vec<f64> = dtdv
        .iter()
        .zip(&it.v)
        .map(|(t, vi)| t - a2 * vi)
        .collect();
    norm(&r)
}

/// ||D* u|| * ||D v||, the eigenvalue proxy sandwiched between a_k^2 and
/// sigma_1^2.
pub fn lambda_k(diff: &DenseMatrix, it: &IteratePair) -> f64 {
    let dv = diff.forward(&it.v).expect("iterate matches diff dims");
    let dtu = diff.adjoint(&it.u).expect("iterate matches diff dims");
    norm(&dtu) * norm(&dv)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleDefect {
    /// (1 - <u, Dv/||Dv||>^2, 1 - <v, D*u/||D*u||>^2), both in [0, 1].
    Defect { toward_u: f64, toward_v: f64 },
    /// Dv or D*u vanished; cannot occur along a monotone run.
    KernelIterate,
}

impl AngleDefect {
    pub fn sum(&self) -> Option<f64> {
        match self {
            AngleDefect::Defect { toward_u, toward_v } => Some(toward_u + toward_v),
            AngleDefect::KernelIterate => None,
        }
    }
}

pub fn angle_defect(diff: &DenseMatrix, it: &IteratePair) -> AngleDefect {
    let dv = diff.forward(&it.v).expect("iterate matches diff dims");
    let dtu = diff.adjoint(&it.u).expect("iterate matches diff dims");
    let ndv = norm(&dv);
    let ndtu = norm(&dtu);
    if ndv == 0.0 || ndtu == 0.0 {
        return AngleDefect::KernelIterate;
    }
    let cu = dot(&it.u, &dv) / ndv;
    let cv = dot(&it.v, &dtu) / ndtu;
    AngleDefect::Defect {
        toward_u: (1.0 - cu * cu).clamp(0.0, 1.0),
        toward_v: (1.0 - cv * cv).clamp(0.0, 1.0),
    }
}

fn field_value(record: &TraceRecord, field: &str) -> Result<f64> {
    let missing = |f: &str| Error::FieldNotRecorded {
        field: f.to_string(),
        iter: record.iter,
    };
    match field {
        "objective" => Ok(record.objective),
        "a" => Ok(record.a),
        "b" => Ok(record.b),
        "c" => record.c.ok_or_else(|| missing("c")),
        "d" => record.d.ok_or_else(|| missing("d")),
        "tau" => Ok(record.tau),
        "xi" => record.xi.ok_or_else(|| missing("xi")),
        "residual" => record.residual.ok_or_else(|| missing("residual")),
        other => Err(Error::UnknownField(other.to_string())),
    }
}

/// Running minimum of a trace field: (n, min_{k <= n} field_k), the
/// quantity behind the min-so-far convergence curves.
pub fn summarize_min_so_far(trace: &[TraceRecord], field: &str) -> Result<Vec<(usize, f64)>> {
    assert!(!trace.is_empty(), "trace must be nonempty");
    let mut out = Vec::with_capacity(trace.len());
    let mut running = f64::INFINITY;
    for record in trace {
        running = running.min(field_value(record, field)?);
        out.push((record.iter, running));
    }
    Ok(out)
}
