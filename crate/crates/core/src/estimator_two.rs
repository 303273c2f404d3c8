//! Stochastic ascent with independent step sizes for u and v.
//!
//! The squared objective along the sampled directions is the rational
//! quadratic q^2(tau, xi) = (a + tau b + xi c + tau xi d)^2 /
//! ((1 + tau^2)(1 + xi^2)). Its interior maximizer is closed-form: tau
//! solves a quadratic built from e = ab + cd and f = a^2 + c^2 - b^2 - d^2,
//! and xi follows from the first-order condition.

use rand::Rng;

use crate::config::RunConfig;
use crate::diagnostics::{EstimateReport, StopReason, TraceRecord};
use crate::error::{Error, Result};
use crate::estimator_one::DegenerateStep;
use crate::linalg::{dot, sphere_step};
use crate::operator::BlackBoxPair;
use crate::sampling::{initialize, sample_direction_pair, DirectionPair, InitOutcome, IteratePair};

/// The four bilinear products driving one iteration:
/// a = <u, Dv>, b = <w, Dv>, c = <u, Dx>, d = <w, Dx> for D = A - V.
/// `a` is the current objective, re-evaluated fresh each iteration.
#[derive(Debug, Clone, Copy)]
pub struct StepCoefficientsTwo {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl StepCoefficientsTwo {
    /// Linear coefficient e = ab + cd of the tau quadratic.
    pub fn e(&self) -> f64 {
        self.a * self.b + self.c * self.d
    }

    /// Gap f = a^2 + c^2 - b^2 - d^2 between the iterate and direction rows.
    pub fn f(&self) -> f64 {
        self.a * self.a + self.c * self.c - self.b * self.b - self.d * self.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepTwo {
    Step { tau: f64, xi: f64 },
    /// e at floating noise level: the maximizer sits at a boundary of the
    /// (tau, xi) chart. Resample the direction pair.
    Degenerate(DegenerateStep),
    /// a + tau*b vanished, so xi has no finite expression; resample.
    VanishingDenominator,
}

/// Evaluates a, b, c, d with exactly 2 forward and 2 adjoint calls.
pub fn coefficients_two(
    pair: &BlackBoxPair,
    it: &IteratePair,
    dir: &DirectionPair,
) -> Result<StepCoefficientsTwo> {
    let av = pair.apply_a(&it.v)?;
    let ax = pair.apply_a(&dir.x)?;
    let vtu = pair.apply_v_adjoint(&it.u)?;
    let vtw = pair.apply_v_adjoint(&dir.w)?;

    Ok(StepCoefficientsTwo {
        a: dot(&it.u, &av) - dot(&vtu, &it.v),
        b: dot(&dir.w, &av) - dot(&vtw, &it.v),
        c: dot(&it.u, &ax) - dot(&vtu, &dir.x),
        d: dot(&dir.w, &ax) - dot(&vtw, &dir.x),
    })
}

/// Classifies the flat direction e = 0, where q^2(tau) is monotone in
/// tau^2: compare the mass on the iterate row (a^2 + c^2) against the
/// direction row (b^2 + d^2).
fn classify_flat(coeffs: &StepCoefficientsTwo) -> DegenerateStep {
    let here = coeffs.a * coeffs.a + coeffs.c * coeffs.c;
    let there = coeffs.b * coeffs.b + coeffs.d * coeffs.d;
    if here > there {
        DegenerateStep::MaxAtZero
    } else if here < there {
        DegenerateStep::SupremumNotAttained
    } else {
        DegenerateStep::Constant
    }
}

/// Closed-form joint maximizer of q^2(tau, xi).
///
/// tau is the root of e*tau^2 + f*tau - e with the sign of e (the
/// ascending root); the two roots multiply to -1, so the reciprocal form
/// avoids cancellation when f and e have the same sign. xi then follows
/// from the stationarity condition xi = (c + tau d) / (a + tau b).
pub fn step_sizes_two(coeffs: &StepCoefficientsTwo) -> StepTwo {
    let e = coeffs.e();
    let f = coeffs.f();
    let e_tol = 1e-14 * (1.0 + f.abs());
    if e.abs() <= e_tol {
        return StepTwo::Degenerate(classify_flat(coeffs));
    }
    let g = f / (2.0 * e.abs());
    let magnitude = if g > 0.0 {
        1.0 / (g + g.hypot(1.0))
    } else {
        -g + g.hypot(1.0)
    };
    let tau = e.signum() * magnitude;
    let denom = coeffs.a + tau * coeffs.b;
    if denom.abs() <= 1e-300 {
        return StepTwo::VanishingDenominator;
    }
    let xi = (coeffs.c + tau * coeffs.d) / denom;
    StepTwo::Step { tau, xi }
}

/// New objective after the step, from the coefficients alone:
/// q = (a + tau b + xi c + tau xi d) / sqrt((1+tau^2)(1+xi^2)).
fn stepped_objective(coeffs: &StepCoefficientsTwo, tau: f64, xi: f64) -> f64 {
    let numerator = coeffs.a + tau * coeffs.b + xi * coeffs.c + tau * xi * coeffs.d;
    numerator / ((1.0 + tau * tau) * (1.0 + xi * xi)).sqrt()
}

fn apply_step(
    it: &IteratePair,
    dir: &DirectionPair,
    tau: f64,
    xi: f64,
    coeffs: &StepCoefficientsTwo,
) -> IteratePair {
    let mut u = sphere_step(&it.u, &dir.w, tau);
    let v = sphere_step(&it.v, &dir.x, xi);
    let mut objective = stepped_objective(coeffs, tau, xi);
    // Only q^2 ascends; keep the reported objective nonnegative by
    // flipping u (which negates q without changing the maximization).
    if objective < 0.0 {
        for ui in u.iter_mut() {
            *ui = -*ui;
        }
        objective = -objective;
    }
    IteratePair { u, v, objective }
}

/// One accepted iteration, redrawing directions on degenerate coefficients
/// up to `max_retries` times.
pub fn iterate_two<R: Rng>(
    pair: &BlackBoxPair,
    it: &IteratePair,
    rng: &mut R,
    max_retries: usize,
) -> Result<(IteratePair, TraceRecord)> {
    for _ in 0..=max_retries {
        let dir = sample_direction_pair(rng, it)?;
        let coeffs = coefficients_two(pair, it, &dir)?;
        if let StepTwo::Step { tau, xi } = step_sizes_two(&coeffs) {
            let next = apply_step(it, &dir, tau, xi, &coeffs);
            let (n_forward, n_adjoint) = pair.call_counts();
            let record = TraceRecord {
                iter: 0,
                objective: next.objective,
                a: coeffs.a,
                b: coeffs.b,
                c: Some(coeffs.c),
                d: Some(coeffs.d),
                tau,
                xi: Some(xi),
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

/// Full run of the two-step estimator. Stops once |b_k| + |c_k| stays
/// below eps for `patience` consecutive fresh draws.
pub fn run_two(pair: &BlackBoxPair, config: &RunConfig) -> Result<EstimateReport> {
    run_two_observed(pair, config, |_, _| {})
}

/// As [`run_two`], invoking `observe` with the iterate after every trace
/// row is produced.
pub fn run_two_observed(
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
            let coeffs = coefficients_two(pair, &it, &dir)?;

            if coeffs.b.abs() + coeffs.c.abs() < config.eps {
                quiet += 1;
                let (n_forward, n_adjoint) = pair.call_counts();
                let mut record = TraceRecord {
                    iter: k,
                    objective: it.objective,
                    a: coeffs.a,
                    b: coeffs.b,
                    c: Some(coeffs.c),
                    d: Some(coeffs.d),
                    tau: 0.0,
                    xi: Some(0.0),
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
                stepped = true;
                break;
            }
            quiet = 0;

            match step_sizes_two(&coeffs) {
                StepTwo::Degenerate(_) | StepTwo::VanishingDenominator => continue,
                StepTwo::Step { tau, xi } => {
                    let next = apply_step(&it, &dir, tau, xi, &coeffs);
                    let (n_forward, n_adjoint) = pair.call_counts();
                    let mut record = TraceRecord {
                        iter: k,
                        objective: next.objective,
                        a: coeffs.a,
                        b: coeffs.b,
                        c: Some(coeffs.c),
                        d: Some(coeffs.d),
                        tau,
                        xi: Some(xi),
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
