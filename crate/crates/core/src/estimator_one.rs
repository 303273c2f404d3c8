//! Stochastic ascent with one joint step size for u and v.
//!
//! Each iteration samples tangent directions (w, x), evaluates the ascent
//! coefficients a, b from four oracle products, takes the closed-form
//! optimal step tau, and moves both iterates along their great circles.
//! The objective <u, (A-V) v> increases by exactly tau * a / 2 per step.

use rand::Rng;

use crate::config::RunConfig;
use crate::diagnostics::{EstimateReport, StopReason, TraceRecord};
use crate::error::{Error, Result};
use crate::linalg::{dot, sphere_step};
use crate::operator::BlackBoxPair;
use crate::sampling::{initialize, sample_direction_pair, DirectionPair, InitOutcome, IteratePair};

/// Ascent coefficients along a sampled direction pair.
///
/// `a` and `b` are the linear and quadratic coefficients of the derivative
/// of the line objective s(tau); `objective` and `cross` are the freshly
/// evaluated <u,(A-V)v> and <w,(A-V)x> obtained from the same four oracle
/// products, kept for exact objective bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct StepCoefficientsOne {
    pub a: f64,
    pub b: f64,
    pub objective: f64,
    pub cross: f64,
}

/// Why no step can be taken along the current direction pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateStep {
    /// The line objective peaks at tau = 0; no ascent possible here.
    MaxAtZero,
    /// The objective increases toward infinity and never attains its sup.
    SupremumNotAttained,
    /// The objective is constant along the direction.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepOne {
    Step(f64),
    /// |a| at floating noise level: resample the direction pair.
    Degenerate(DegenerateStep),
}

/// Evaluates a and b with exactly 2 forward and 2 adjoint calls.
pub fn coefficients_one(
    pair: &BlackBoxPair,
    it: &IteratePair,
    dir: &DirectionPair,
) -> Result<StepCoefficientsOne> {
    let ax = pair.apply_a(&dir.x)?;
    let av = pair.apply_a(&it.v)?;
    let vtu = pair.apply_v_adjoint(&it.u)?;
    let vtw = pair.apply_v_adjoint(&dir.w)?;

    let a = dot(&it.u, &ax) + dot(&dir.w, &av) - dot(&vtu, &dir.x) - dot(&vtw, &it.v);
    let objective = dot(&it.u, &av) - dot(&vtu, &it.v);
    let cross = dot(&dir.w, &ax) - dot(&vtw, &dir.x);
    let b = 2.0 * (cross - objective);
    Ok(StepCoefficientsOne {
        a,
        b,
        objective,
        cross,
    })
}

/// Closed-form maximizer of s(tau): sign(a) * (b/(2|a|) + sqrt(b^2/(4a^2)+1)).
///
/// Evaluated via hypot, with the reciprocal-root form when the linear
/// term dominates, so |b| >> |a| cannot overflow or cancel.
pub fn step_size_one(c: &StepCoefficientsOne) -> StepOne {
    let a_tol = 1e-14 * (1.0 + c.b.abs());
    if c.a.abs() <= a_tol {
        return StepOne::Degenerate(if c.b < 0.0 {
            DegenerateStep::MaxAtZero
        } else if c.b > 0.0 {
            DegenerateStep::SupremumNotAttained
        } else {
            DegenerateStep::Constant
        });
    }
    let g = c.b / (2.0 * c.a.abs());
    // The two roots of a + b*tau - a*tau^2 multiply to -1; for g < 0 the
    // wanted root is evaluated through its reciprocal to avoid cancellation.
    let magnitude = if g >= 0.0 {
        g + g.hypot(1.0)
    } else {
        1.0 / (g.hypot(1.0) - g)
    };
    StepOne::Step(c.a.signum() * magnitude)
}

/// Applies the accepted step: both iterates move with the same tau.
fn apply_step(it: &IteratePair, dir: &DirectionPair, tau: f64, c: &StepCoefficientsOne) -> IteratePair {
    let u = sphere_step(&it.u, &dir.w, tau);
    let v = sphere_step(&it.v, &dir.x, tau);
    let objective = (c.objective + tau * c.a + tau * tau * c.cross) / (1.0 + tau * tau);
    IteratePair { u, v, objective }
}

/// One accepted iteration: samples directions (redrawing on degenerate
/// coefficients up to `max_retries` times) and takes the optimal step.
pub fn iterate_one<R: Rng>(
    pair: &BlackBoxPair,
    it: &IteratePair,
    rng: &mut R,
    max_retries: usize,
) -> Result<(IteratePair, TraceRecord)> {
    for _ in 0..=max_retries {
        let dir = sample_direction_pair(rng, it)?;
        let coeffs = coefficients_one(pair, it, &dir)?;
        if let StepOne::Step(tau) = step_size_one(&coeffs) {
            let next = apply_step(it, &dir, tau, &coeffs);
            let (n_forward, n_adjoint) = pair.call_counts();
            let record = TraceRecord {
                iter: 0,
                objective: next.objective,
                a: coeffs.a,
                b: coeffs.b,
                c: None,
                d: None,
                tau,
                xi: None,
                residual: None,
                n_forward,
                n_adjoint,
            };
            return Ok((next, record));
        }
    }
    Err(Error::ResampleExhausted {
        retries: max_retries,
    })
}

/// Full run of the one-step estimator.
pub fn run_one(pair: &BlackBoxPair, config: &RunConfig) -> Result<EstimateReport> {
    run_one_observed(pair, config, |_, _| {})
}

/// As [`run_one`], invoking `observe` with the iterate after every trace
/// row is produced (for residual instrumentation in dense test mode).
pub fn run_one_observed(
    pair: &BlackBoxPair,
    config: &RunConfig,
    mut observe: impl FnMut(&IteratePair, &mut TraceRecord),
) -> Result<EstimateReport> {
    config.validate()?;
    let mut rng = crate::sampling::rng_from_seed(config.seed);

    let mut iterate = None;
    for _ in 0..=config.init_resamples {
        match initialize(pair, &mut rng, config.null_tol)? {
            InitOutcome::Started(it) => {
                iterate = Some(it);
                break;
            }
            InitOutcome::PossibleAdjointPair { .. } => continue,
        }
    }
    let Some(mut it) = iterate else {
        return Ok(EstimateReport {
            estimate: 0.0,
            iterations: 0,
            stop_reason: StopReason::AdjointPair,
            final_pair: None,
            trace: Vec::new(),
        });
    };

    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut quiet = 0usize;
    let mut stop_reason = StopReason::MaxIters;

    'outer: for k in 0..config.max_iters {
        let mut stepped = false;
        for _ in 0..=config.max_direction_retries {
            let dir = sample_direction_pair(&mut rng, &it)?;
            let coeffs = coefficients_one(pair, &it, &dir)?;

            if coeffs.a.abs() < config.eps {
                quiet += 1;
                let (n_forward, n_adjoint) = pair.call_counts();
                let mut record = TraceRecord {
                    iter: k,
                    objective: it.objective,
                    a: coeffs.a,
                    b: coeffs.b,
                    c: None,
                    d: None,
                    tau: 0.0,
                    xi: None,
                    residual: None,
                    n_forward,
                    n_adjoint,
                };
                observe(&it, &mut record);
                trace.push(record);
                if quiet >= config.patience {
                    stop_reason = StopReason::Tolerance;
                    break 'outer;
                }
                stepped = true; // no step, but the iteration is accounted for
                break;
            }
            quiet = 0;

            match step_size_one(&coeffs) {
                StepOne::Degenerate(_) => continue,
                StepOne::Step(tau) => {
                    let next = apply_step(&it, &dir, tau, &coeffs);
                    let (n_forward, n_adjoint) = pair.call_counts();
                    let mut record = TraceRecord {
                        iter: k,
                        objective: next.objective,
                        a: coeffs.a,
                        b: coeffs.b,
                        c: None,
                        d: None,
                        tau,
                        xi: None,
                        residual: None,
                        n_forward,
                        n_adjoint,
                    };
                    it = next;
                    observe(&it, &mut record);
                    trace.push(record);
                    stepped = true;
                    break;
                }
            }
        }
        if !stepped {
            return Err(Error::ResampleExhausted {
                retries: config.max_direction_retries,
            });
        }
    }

    Ok(EstimateReport {
        estimate: it.objective,
        iterations: trace.len(),
        stop_reason,
        final_pair: Some(it),
        trace,
    })
}
