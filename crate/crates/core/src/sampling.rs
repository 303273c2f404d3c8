//! Random initialization on unit spheres and tangent-space directions.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{dot, normalize};
use crate::operator::BlackBoxPair;

/// The seeded generator used everywhere randomness is needed. ChaCha gives
/// a bit-exact stream for a given seed on every platform.
pub type RngState = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> RngState {
    use rand::SeedableRng;
    RngState::seed_from_u64(seed)
}

/// Current estimation state: unit vectors u, v and the objective
/// `<u, A v> - <V* u, v>`.
#[derive(Debug, Clone)]
pub struct IteratePair {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub objective: f64,
}

/// Unit search directions tangent to the iterate: w ⊥ u, x ⊥ v.
#[derive(Debug, Clone)]
pub struct DirectionPair {
    pub w: Vec<f64>,
    pub x: Vec<f64>,
}

fn gaussian_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample(StandardNormal)).collect()
}

/// Uniform draw from the unit sphere: a normalized Gaussian vector.
pub fn sample_unit_sphere<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    assert!(dim >= 1, "sphere dimension must be at least 1");
    loop {
        let mut y = gaussian_vector(rng, dim);
        // Redraw on the measure-zero event of a (numerically) zero draw.
        if normalize(&mut y) > 1e-300 {
            return y;
        }
    }
}

/// Uniform draw from the unit sphere of the tangent space at `anchor`:
/// project a Gaussian vector onto anchor-perp and normalize.
pub fn sample_tangent_direction<R: Rng>(rng: &mut R, anchor: &[f64]) -> Result<Vec<f64>> {
    if anchor.len() < 2 {
        return Err(Error::NoTangentSphere);
    }
    debug_assert!((crate::linalg::norm(anchor) - 1.0).abs() <= 1e-9);
    loop {
        let mut y = gaussian_vector(rng, anchor.len());
        let overlap = dot(&y, anchor);
        for (yi, ai) in y.iter_mut().zip(anchor) {
            *yi -= overlap * ai;
        }
        // y nearly parallel to the anchor: redraw rather than error.
        if normalize(&mut y) > 1e-12 {
            return Ok(y);
        }
    }
}

pub fn sample_direction_pair<R: Rng>(rng: &mut R, it: &IteratePair) -> Result<DirectionPair> {
    let x = sample_tangent_direction(rng, &it.v)?;
    let w = sample_tangent_direction(rng, &it.u)?;
    Ok(DirectionPair { w, x })
}

/// Result of one initialization draw.
#[derive(Debug)]
pub enum InitOutcome {
    /// Objective is safely nonzero; iteration may start.
    Started(IteratePair),
    /// `|<u, Av> - <V*u, v>|` fell below the null threshold; with random
    /// u, v this means A = V almost surely. Caller decides whether to
    /// resample or declare an adjoint pair.
    PossibleAdjointPair { objective: f64, scale: f64 },
}

/// Draws (u, v) uniformly on their spheres, flips the sign of u so that
/// the objective starts nonnegative, and screens for a null difference.
///
/// `null_tol` is relative: the threshold applied is
/// `null_tol * (||A v|| + ||V* u||)`. Costs one forward and one adjoint
/// call.
pub fn initialize<R: Rng>(pair: &BlackBoxPair, rng: &mut R, null_tol: f64) -> Result<InitOutcome> {
    let (m, d) = pair.dims();
    if m < 2 || d < 2 {
        return Err(Error::DimensionTooSmall { m, d });
    }
    let mut u = sample_unit_sphere(rng, m);
    let v = sample_unit_sphere(rng, d);
    let av = pair.apply_a(&v)?;
    let vtu = pair.apply_v_adjoint(&u)?;
    let raw = dot(&u, &av) - dot(&vtu, &v);
    let scale = crate::linalg::norm(&av) + crate::linalg::norm(&vtu);
    if raw.abs() <= null_tol * scale {
        return Ok(InitOutcome::PossibleAdjointPair {
            objective: raw,
            scale,
        });
    }
    if raw < 0.0 {
        for ui in u.iter_mut() {
            *ui = -*ui;
        }
    }
    Ok(InitOutcome::Started(IteratePair {
        u,
        v,
        objective: raw.abs(),
    }))
}
