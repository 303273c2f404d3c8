//! Desk-scale parallel-beam tomography operators.
//!
//! Geometry conventions (fixed here so the weights are bit-reproducible):
//! the n x n image covers the square [-n/2, n/2]^2 with pixel (row r,
//! column c) occupying [c - n/2, c+1 - n/2] x [r - n/2, r+1 - n/2]; the
//! flattened index is r*n + c. A ray for (angle theta, bin j) runs in
//! direction (cos theta, sin theta) through the point t_j * (-sin theta,
//! cos theta), where t_j = j + 0.5 - bins/2 in pixel units (detector
//! pitch 1, centered). Angles are measured from the +x axis.
//!
//! Three operators are exposed: the line-model forward projector R (exact
//! pixel intersection lengths, Siddon-style traversal), its exact
//! transpose, and a pixel-driven nearest-bin backprojector that is close
//! to, but deliberately not, the transpose of R.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::{AdjointOracle, BlackBoxPair, DenseMatrix, ForwardOracle};

#[derive(Debug, Clone)]
pub struct ProjectorGeometry {
    /// Image side length n (n x n pixels).
    pub image_size: usize,
    /// Projection angles in radians.
    pub angles: Vec<f64>,
    /// Detector bins per angle.
    pub detector_bins: usize,
}

impl ProjectorGeometry {
    /// `n_angles` uniform angles over [0, pi).
    pub fn parallel(image_size: usize, n_angles: usize, detector_bins: usize) -> Result<Self> {
        let angles = (0..n_angles)
            .map(|i| std::f64::consts::PI * i as f64 / n_angles.max(1) as f64)
            .collect();
        let geom = Self {
            image_size,
            angles,
            detector_bins,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if self.image_size < 2 {
            return Err(Error::InvalidGeometry("image size must be at least 2".into()));
        }
        if self.angles.is_empty() {
            return Err(Error::InvalidGeometry("at least one angle required".into()));
        }
        if self.angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidGeometry("angles must be finite".into()));
        }
        if self.detector_bins < 2 {
            return Err(Error::InvalidGeometry("at least two detector bins required".into()));
        }
        Ok(())
    }

    pub fn n_pixels(&self) -> usize {
        self.image_size * self.image_size
    }

    pub fn n_rays(&self) -> usize {
        self.angles.len() * self.detector_bins
    }

    /// Signed detector offset of bin `j` from the rotation center.
    pub fn bin_offset(&self, j: usize) -> f64 {
        j as f64 + 0.5 - self.detector_bins as f64 / 2.0
    }
}

/// Sparse ray-pixel intersection lengths: one row of (pixel index,
/// length) pairs per ray, ray index = angle_index * bins + bin.
#[derive(Debug, Clone)]
pub struct SparseProjectionWeights {
    geom: ProjectorGeometry,
    rows: Vec<Vec<(u32, f64)>>,
}

/// Intersection lengths of one ray with every pixel it crosses.
///
/// Clips the ray to the image square, collects the parameters where it
/// crosses grid lines, and assigns each resulting segment to the pixel
/// containing its midpoint.
fn ray_pixel_weights(n: usize, theta: f64, t: f64) -> Vec<(u32, f64)> {
    let h = n as f64 / 2.0;
    let (sin_t, cos_t) = theta.sin_cos();
    let origin = (-t * sin_t, t * cos_t);
    let dir = (cos_t, sin_t);

    // Clip to the square via axis slabs; |dir| = 1, so the parameter is
    // arc length.
    let mut s_lo = f64::NEG_INFINITY;
    let mut s_hi = f64::INFINITY;
    for (p, d) in [(origin.0, dir.0), (origin.1, dir.1)] {
        if d.abs() < 1e-12 {
            if p <= -h || p >= h {
                return Vec::new();
            }
        } else {
            let a = (-h - p) / d;
            let b = (h - p) / d;
            s_lo = s_lo.max(a.min(b));
            s_hi = s_hi.min(a.max(b));
        }
    }
    if s_hi - s_lo <= 1e-12 {
        return Vec::new();
    }

    let mut cuts = vec![s_lo, s_hi];
    for (p, d) in [(origin.0, dir.0), (origin.1, dir.1)] {
        if d.abs() < 1e-12 {
            continue;
        }
        for i in 0..=n {
            let s = (-h + i as f64 - p) / d;
            if s > s_lo && s < s_hi {
                cuts.push(s);
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut weights = Vec::with_capacity(cuts.len());
    for pair in cuts.windows(2) {
        let length = pair[1] - pair[0];
        if length <= 1e-12 {
            continue;
        }
        let mid = 0.5 * (pair[0] + pair[1]);
        let x = origin.0 + mid * dir.0;
        let y = origin.1 + mid * dir.1;
        let c = (((x + h).floor() as isize).clamp(0, n as isize - 1)) as usize;
        let r = (((y + h).floor() as isize).clamp(0, n as isize - 1)) as usize;
        weights.push(((r * n + c) as u32, length));
    }
    weights
}

/// Builds the full line model for a geometry. Deterministic: the weights
/// depend only on the geometry, never on sampling.
pub fn build_line_model(geom: &ProjectorGeometry) -> Result<SparseProjectionWeights> {
    geom.validate()?;
    let mut rows = Vec::with_capacity(geom.n_rays());
    for &theta in &geom.angles {
        for j in 0..geom.detector_bins {
            rows.push(ray_pixel_weights(geom.image_size, theta, geom.bin_offset(j)));
        }
    }
    Ok(SparseProjectionWeights {
        geom: geom.clone(),
        rows,
    })
}

impl SparseProjectionWeights {
    pub fn geometry(&self) -> &ProjectorGeometry {
        &self.geom
    }

    pub fn ray(&self, index: usize) -> &[(u32, f64)] {
        &self.rows[index]
    }

    /// Sum of all intersection lengths, the total chord mass.
    pub fn total_mass(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(_, w)| w).sum::<f64>())
            .sum()
    }

    /// Dense n_rays x n_pixels matrix of the projector, for ground-truth
    /// spectral computations at desk scale.
    pub fn materialize_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.geom.n_rays(), self.geom.n_pixels());
        for (ray, row) in self.rows.iter().enumerate() {
            for &(pixel, w) in row {
                m.set(ray, pixel as usize, w);
            }
        }
        m
    }
}

/// Forward projection: sinogram = R image.
pub fn project(weights: &SparseProjectionWeights, image: &[f64]) -> Result<Vec<f64>> {
    if image.len() != weights.geom.n_pixels() {
        return Err(Error::DimensionMismatch {
            oracle: "projector",
            expected: weights.geom.n_pixels(),
            got: image.len(),
        });
    }
    Ok(weights
        .rows
        .iter()
        .map(|row| row.iter().map(|&(p, w)| w * image[p as usize]).sum())
        .collect())
}

/// Exact transpose of [`project`]: image = R^T sinogram.
pub fn backproject_exact(weights: &SparseProjectionWeights, sino: &[f64]) -> Result<Vec<f64>> {
    if sino.len() != weights.geom.n_rays() {
        return Err(Error::DimensionMismatch {
            oracle: "exact backprojector",
            expected: weights.geom.n_rays(),
            got: sino.len(),
        });
    }
    let mut image = vec![0.0; weights.geom.n_pixels()];
    for (ray, row) in weights.rows.iter().enumerate() {
        let s = sino[ray];
        for &(p, w) in row {
            image[p as usize] += w * s;
        }
    }
    Ok(image)
}

/// Pixel-driven backprojection with nearest-bin interpolation: each pixel
/// center is projected onto the detector and reads the nearest bin. A
/// standard discretization, and deliberately not the transpose of the
/// line-model projector.
pub fn backproject_mismatched(geom: &ProjectorGeometry, sino: &[f64]) -> Result<Vec<f64>> {
    geom.validate()?;
    if sino.len() != geom.n_rays() {
        return Err(Error::DimensionMismatch {
            oracle: "mismatched backprojector",
            expected: geom.n_rays(),
            got: sino.len(),
        });
    }
    let n = geom.image_size;
    let h = n as f64 / 2.0;
    let bins = geom.detector_bins;
    let mut image = vec![0.0; geom.n_pixels()];
    for (ai, &theta) in geom.angles.iter().enumerate() {
        let (sin_t, cos_t) = theta.sin_cos();
        for r in 0..n {
            let cy = r as f64 + 0.5 - h;
            for c in 0..n {
                let cx = c as f64 + 0.5 - h;
                // Detector coordinate of the pixel center.
                let t = -cx * sin_t + cy * cos_t;
                let j = (t + bins as f64 / 2.0 - 0.5).round();
                if j >= 0.0 && j < bins as f64 {
                    image[r * n + c] += sino[ai * bins + j as usize];
                }
            }
        }
    }
    Ok(image)
}

/// Builds the line model once for sharing between oracle instances.
pub fn shared_line_model(geom: &ProjectorGeometry) -> Result<Arc<SparseProjectionWeights>> {
    Ok(Arc::new(build_line_model(geom)?))
}

/// The forward projector as a black-box oracle.
pub struct TomoForward {
    weights: Arc<SparseProjectionWeights>,
}

impl TomoForward {
    pub fn new(weights: Arc<SparseProjectionWeights>) -> Self {
        Self { weights }
    }
}

impl ForwardOracle for TomoForward {
    fn dims(&self) -> (usize, usize) {
        (self.weights.geom.n_rays(), self.weights.geom.n_pixels())
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        project(&self.weights, v).expect("dimension checked by caller")
    }
}

/// The exact backprojector as the adjoint oracle of the (matched) pair.
pub struct TomoExactAdjoint {
    weights: Arc<SparseProjectionWeights>,
}

impl TomoExactAdjoint {
    pub fn new(weights: Arc<SparseProjectionWeights>) -> Self {
        Self { weights }
    }
}

impl AdjointOracle for TomoExactAdjoint {
    fn dims(&self) -> (usize, usize) {
        (self.weights.geom.n_rays(), self.weights.geom.n_pixels())
    }

    fn apply_adjoint(&self, u: &[f64]) -> Vec<f64> {
        backproject_exact(&self.weights, u).expect("dimension checked by caller")
    }
}

/// The mismatched backprojector, presented as the adjoint oracle of an
/// operator B* that only approximates R.
pub struct TomoMismatchedAdjoint {
    geom: ProjectorGeometry,
}

impl TomoMismatchedAdjoint {
    pub fn new(geom: ProjectorGeometry) -> Self {
        Self { geom }
    }
}

impl AdjointOracle for TomoMismatchedAdjoint {
    fn dims(&self) -> (usize, usize) {
        (self.geom.n_rays(), self.geom.n_pixels())
    }

    fn apply_adjoint(&self, u: &[f64]) -> Vec<f64> {
        backproject_mismatched(&self.geom, u).expect("dimension checked by caller")
    }
}

/// (R, R) as a black-box pair: forward projector with its exact adjoint.
/// The difference is the zero map.
pub fn matched_pair(geom: &ProjectorGeometry) -> Result<BlackBoxPair> {
    let weights = Arc::new(build_line_model(geom)?);
    BlackBoxPair::new(
        Box::new(TomoForward {
            weights: Arc::clone(&weights),
        }),
        Box::new(TomoExactAdjoint { weights }),
    )
}

/// (R, B*) as a black-box pair: forward projector against the mismatched
/// backprojector. The difference R - B* has a genuinely positive norm.
pub fn mismatched_pair(geom: &ProjectorGeometry) -> Result<BlackBoxPair> {
    let weights = Arc::new(build_line_model(geom)?);
    BlackBoxPair::new(
        Box::new(TomoForward { weights }),
        Box::new(TomoMismatchedAdjoint { geom: geom.clone() }),
    )
}

/// Dense matrix of the operator whose adjoint is the mismatched
/// backprojector: column p is the image response to the delta sinogram,
/// transposed into a rays x pixels matrix.
pub fn materialize_mismatched(geom: &ProjectorGeometry) -> Result<DenseMatrix> {
    geom.validate()?;
    let mut m = DenseMatrix::zeros(geom.n_rays(), geom.n_pixels());
    let mut delta = vec![0.0; geom.n_rays()];
    for ray in 0..geom.n_rays() {
        delta[ray] = 1.0;
        let image = backproject_mismatched(geom, &delta)?;
        delta[ray] = 0.0;
        for (pixel, &value) in image.iter().enumerate() {
            if value != 0.0 {
                m.set(ray, pixel, value);
            }
        }
    }
    Ok(m)
}
