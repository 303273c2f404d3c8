//! Small dense vector helpers shared across the crate.

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// y <- y + alpha * x
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale(alpha: f64, x: &mut [f64]) {
    for xi in x.iter_mut() {
        *xi *= alpha;
    }
}

/// Normalizes in place and returns the pre-normalization norm.
pub fn normalize(x: &mut [f64]) -> f64 {
    let n = norm(x);
    if n > 0.0 {
        scale(1.0 / n, x);
    }
    n
}

/// (u + s*w) / sqrt(1 + s^2), renormalized explicitly to counter drift.
pub fn sphere_step(anchor: &[f64], direction: &[f64], step: f64) -> Vec<f64> {
    let mut out: Vec<f64> = anchor
        .iter()
        .zip(direction)
        .map(|(a, d)| a + step * d)
        .collect();
    normalize(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_step_is_unit() {
        let v = sphere_step(&[1.0, 0.0], &[0.0, 1.0], 1.0);
        let s = 0.5_f64.sqrt();
        assert!((v[0] - s).abs() < 1e-15);
        assert!((v[1] - s).abs() < 1e-15);
        assert!((norm(&v) - 1.0).abs() < 1e-15);
    }
}
