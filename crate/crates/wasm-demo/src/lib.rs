//! Browser bindings; see www/index.html for the page that drives them.
//!
//! Every export returns a JSON string so the page needs no generated
//! TypeScript glue beyond the wasm-bindgen loader.

use serde_json::json;
use wasm_bindgen::prelude::*;

use adjmm::estimator_two::{step_sizes_two, StepCoefficientsTwo, StepTwo};
use adjmm::operator::{BlackBoxPair, DenseMatrix};
use adjmm::oracle::{adjointness_test, jacobi_svd};
use adjmm::sampling::rng_from_seed;
use adjmm::tomo::{self, ProjectorGeometry};
use adjmm::{run_one, run_two, RunConfig};

fn err_json(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

/// Runs both estimators on a seeded Gaussian pair and reports the
/// relative error against the dense SVD per iteration, ready to plot.
#[wasm_bindgen]
pub fn gaussian_convergence(
    m: usize,
    d: usize,
    matrix_seed: u64,
    run_seed: u64,
    max_iters: usize,
) -> String {
    if !(2..=200).contains(&m) || !(2..=200).contains(&d) {
        return err_json("matrix sides must be between 2 and 200");
    }
    let max_iters = max_iters.clamp(1, 20_000);
    let mut rng = rng_from_seed(matrix_seed);
    let a = DenseMatrix::gaussian(m, d, &mut rng);
    let v = DenseMatrix::gaussian(m, d, &mut rng);
    let sigma1 = match a.sub(&v).and_then(|diff| jacobi_svd(&diff)) {
        Ok(svd) => svd.sigma1(),
        Err(e) => return err_json(e),
    };
    let config = RunConfig {
        seed: run_seed,
        max_iters,
        ..RunConfig::default()
    };
    let mut curves = Vec::new();
    for one_step in [true, false] {
        let pair = match BlackBoxPair::from_dense(a.clone(), v.clone()) {
            Ok(p) => p,
            Err(e) => return err_json(e),
        };
        let report = if one_step {
            run_one(&pair, &config)
        } else {
            run_two(&pair, &config)
        };
        let report = match report {
            Ok(r) => r,
            Err(e) => return err_json(e),
        };
        let rel: Vec<f64> = report
            .trace
            .iter()
            .map(|row| ((sigma1 - row.objective) / sigma1).max(0.0))
            .collect();
        curves.push(json!({
            "algorithm": if one_step { "one-step" } else { "two-step" },
            "estimate": report.estimate,
            "iterations": report.iterations,
            "rel_error": rel,
        }));
    }
    json!({ "sigma1": sigma1, "curves": curves }).to_string()
}

/// Estimates the adjoint mismatch of the desk-scale tomography pair and
/// runs the independent dot-product adjointness test.
#[wasm_bindgen]
pub fn tomo_check(
    image_size: usize,
    n_angles: usize,
    detector_bins: usize,
    mismatched: bool,
    seed: u64,
    max_iters: usize,
) -> String {
    if image_size > 48 || detector_bins > 96 || n_angles > 64 {
        return err_json("keep the geometry at desk scale (n<=48, bins<=96, angles<=64)");
    }
    let geom = match ProjectorGeometry::parallel(image_size, n_angles, detector_bins) {
        Ok(g) => g,
        Err(e) => return err_json(e),
    };
    let norm_r = match tomo::build_line_model(&geom) {
        Ok(w) => match jacobi_svd(&w.materialize_dense()) {
            Ok(svd) => svd.sigma1(),
            Err(e) => return err_json(e),
        },
        Err(e) => return err_json(e),
    };
    let pair = match if mismatched {
        tomo::mismatched_pair(&geom)
    } else {
        tomo::matched_pair(&geom)
    } {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let defect = match (tomo::shared_line_model(&geom), ()) {
        (Ok(weights), ()) => {
            let forward = tomo::TomoForward::new(std::sync::Arc::clone(&weights));
            let mut rng = rng_from_seed(seed);
            if mismatched {
                let adjoint = tomo::TomoMismatchedAdjoint::new(geom.clone());
                adjointness_test(&forward, &adjoint, 32, &mut rng)
            } else {
                let adjoint = tomo::TomoExactAdjoint::new(weights);
                adjointness_test(&forward, &adjoint, 32, &mut rng)
            }
        }
        (Err(e), ()) => return err_json(e),
    };
    let config = RunConfig {
        seed,
        max_iters: max_iters.clamp(1, 5_000),
        ..RunConfig::default()
    };
    let report = match run_two(&pair, &config) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    let relative = report.estimate / norm_r;
    json!({
        "estimate": report.estimate,
        "norm_r": norm_r,
        "relative": relative,
        "adjointness_defect": defect,
        "iterations": report.iterations,
        "stop_reason": report.stop_reason,
        "verdict": if relative <= 1e-6 { "ADJOINT" } else { "MISMATCH" },
        "trace_objective": report.trace.iter().map(|r| r.objective).collect::<Vec<_>>(),
    })
    .to_string()
}

/// Closed-form step sizes for hand-entered coefficients, plus the reduced
/// 1-D objective q^2(tau) sampled for plotting.
#[wasm_bindgen]
pub fn step_size_surface(a: f64, b: f64, c: f64, d: f64) -> String {
    let coeffs = StepCoefficientsTwo { a, b, c, d };
    let step = step_sizes_two(&coeffs);
    let reduced = |tau: f64| {
        ((a + tau * b).powi(2) + (c + tau * d).powi(2)) / (1.0 + tau * tau)
    };
    let mut curve = Vec::with_capacity(401);
    for i in 0..=400 {
        let tau = -10.0 + i as f64 * 0.05;
        curve.push(vec![tau, reduced(tau)]);
    }
    match step {
        StepTwo::Step { tau, xi } => json!({
            "tau": tau,
            "xi": xi,
            "q2": reduced(tau),
            "curve": curve,
        })
        .to_string(),
        StepTwo::Degenerate(kind) => json!({
            "degenerate": format!("{kind:?}"),
            "curve": curve,
        })
        .to_string(),
        StepTwo::VanishingDenominator => json!({
            "degenerate": "VanishingDenominator",
            "curve": curve,
        })
        .to_string(),
    }
}
