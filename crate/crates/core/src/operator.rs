//! Black-box linear operator oracles.
//!
//! The estimators only ever see a [`BlackBoxPair`]: a forward oracle
//! computing `A v` and an adjoint oracle computing `V* u`. Everything else
//! (dense matrices, scaling, composition) is an adapter behind those two
//! traits.

use std::cell::Cell;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::dot;

/// Evaluation access to a linear map `A: R^d -> R^m`.
pub trait ForwardOracle {
    /// (m, d) = (output dimension, input dimension).
    fn dims(&self) -> (usize, usize);
    /// Computes `A v` for `v` of length `d`.
    fn apply(&self, v: &[f64]) -> Vec<f64>;
}

/// Adjoint-only access to a linear map `V: R^d -> R^m`.
pub trait AdjointOracle {
    /// (m, d), the dimensions of `V` itself (not of `V*`).
    fn dims(&self) -> (usize, usize);
    /// Computes `V* u` for `u` of length `m`.
    fn apply_adjoint(&self, u: &[f64]) -> Vec<f64>;
}

/// Row-major dense matrix, the reference adapter for tests and file input.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadShape {
                len: entries.len(),
                rows,
                cols,
            });
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// I.i.d. standard normal entries from the given generator.
    pub fn gaussian<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let entries = (0..rows * cols)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `M v`, the forward product.
    pub fn forward(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                oracle: "dense forward",
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// `M* u`, the transpose product.
    pub fn adjoint(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch {
                oracle: "dense adjoint",
                expected: self.rows,
                got: u.len(),
            });
        }
        let mut out = vec![0.0; self.cols];
        for (r, ui) in u.iter().enumerate() {
            for (c, out_c) in out.iter_mut().enumerate() {
                *out_c += self.get(r, c) * ui;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::OracleDimsDisagree {
                forward: (self.rows, self.cols),
                adjoint: (other.rows, other.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e * e).sum::<f64>().sqrt()
    }
}

impl ForwardOracle for DenseMatrix {
    fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.forward(v).expect("dimension checked by caller")
    }
}

impl AdjointOracle for DenseMatrix {
    fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn apply_adjoint(&self, u: &[f64]) -> Vec<f64> {
        self.adjoint(u).expect("dimension checked by caller")
    }
}

/// The zero map of a given shape, usable as either oracle.
#[derive(Debug, Clone, Copy)]
pub struct ZeroOperator {
    pub rows: usize,
    pub cols: usize,
}

impl ForwardOracle for ZeroOperator {
    fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn apply(&self, _v: &[f64]) -> Vec<f64> {
        vec![0.0; self.rows]
    }
}

impl AdjointOracle for ZeroOperator {
    fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn apply_adjoint(&self, _u: &[f64]) -> Vec<f64> {
        vec![0.0; self.cols]
    }
}

/// `alpha * T` for an inner oracle `T`.
pub struct Scaled<T> {
    pub alpha: f64,
    pub inner: T,
}

impl<T: ForwardOracle> ForwardOracle for Scaled<T> {
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = self.inner.apply(v);
        for o in &mut out {
            *o *= self.alpha;
        }
        out
    }
}

impl<T: AdjointOracle> AdjointOracle for Scaled<T> {
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }

    fn apply_adjoint(&self, u: &[f64]) -> Vec<f64> {
        let mut out = self.inner.apply_adjoint(u);
        for o in &mut out {
            *o *= self.alpha;
        }
        out
    }
}

/// Composition `outer ∘ inner`; the adjoint reverses the order.
pub struct Composed<A, B> {
    pub outer: A,
    pub inner: B,
}

impl<A: ForwardOracle, B: ForwardOracle> ForwardOracle for Composed<A, B> {
    fn dims(&self) -> (usize, usize) {
        (self.outer.dims().0, self.inner.dims().1)
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.outer.apply(&self.inner.apply(v))
    }
}

impl<A: AdjointOracle, B: AdjointOracle> AdjointOracle for Composed<A, B> {
    fn dims(&self) -> (usize, usize) {
        (self.outer.dims().0, self.inner.dims().1)
    }

    fn apply_adjoint(&self, u: &[f64]) -> Vec<f64> {
        self.inner.apply_adjoint(&self.outer.apply_adjoint(u))
    }
}

/// The operator pair (A, V): forward access to A, adjoint access to V.
///
/// Every invocation is counted, dimension-checked and screened for
/// non-finite output, so estimator budgets are exact by construction.
pub struct BlackBoxPair {
    forward: Box<dyn ForwardOracle>,
    adjoint: Box<dyn AdjointOracle>,
    n_forward: Cell<u64>,
    n_adjoint: Cell<u64>,
}

impl BlackBoxPair {
    pub fn new(forward: Box<dyn ForwardOracle>, adjoint: Box<dyn AdjointOracle>) -> Result<Self> {
        if forward.dims() != adjoint.dims() {
            return Err(Error::OracleDimsDisagree {
                forward: forward.dims(),
                adjoint: adjoint.dims(),
            });
        }
        Ok(Self {
            forward,
            adjoint,
            n_forward: Cell::new(0),
            n_adjoint: Cell::new(0),
        })
    }

    /// Convenience constructor with A dense and V* = (V dense) transposed.
    pub fn from_dense(a: DenseMatrix, v: DenseMatrix) -> Result<Self> {
        Self::new(Box::new(a), Box::new(v))
    }

    pub fn dims(&self) -> (usize, usize) {
        self.forward.dims()
    }

    /// `A v`; counts one forward call.
    pub fn apply_a(&self, v: &[f64]) -> Result<Vec<f64>> {
        let (m, d) = self.dims();
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                oracle: "forward oracle",
                expected: d,
                got: v.len(),
            });
        }
        self.n_forward.set(self.n_forward.get() + 1);
        let out = self.forward.apply(v);
        debug_assert_eq!(out.len(), m);
        if out.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteOutput {
                oracle: "forward oracle",
            });
        }
        Ok(out)
    }

    /// `V* u`; counts one adjoint call.
    pub fn apply_v_adjoint(&self, u: &[f64]) -> Result<Vec<f64>> {
        let (m, d) = self.dims();
        if u.len() != m {
            return Err(Error::DimensionMismatch {
                oracle: "adjoint oracle",
                expected: m,
                got: u.len(),
            });
        }
        self.n_adjoint.set(self.n_adjoint.get() + 1);
        let out = self.adjoint.apply_adjoint(u);
        debug_assert_eq!(out.len(), d);
        if out.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteOutput {
                oracle: "adjoint oracle",
            });
        }
        Ok(out)
    }

    /// (n_forward, n_adjoint) since construction or the last reset.
    pub fn call_counts(&self) -> (u64, u64) {
        (self.n_forward.get(), self.n_adjoint.get())
    }

    pub fn reset_counts(&self) {
        self.n_forward.set(0);
        self.n_adjoint.set(0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn m2(entries: [f64; 4]) -> DenseMatrix {
        DenseMatrix::new(2, 2, entries.to_vec()).unwrap()
    }

    #[test]
    fn dense_forward_identity_on_e1() {
        let m = m2([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(m.forward(&[1.0, 0.0]).unwrap(), vec![1.0, 0.0]);
        assert_eq!(m.forward(&[0.0, 1.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn dense_forward_column_extraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = DenseMatrix::gaussian(3, 2, &mut rng);
        let col = m.forward(&[1.0, 0.0]).unwrap();
        for r in 0..3 {
            assert_eq!(col[r], m.get(r, 0));
        }
    }

    #[test]
    fn dense_adjoint_rows() {
        let m = m2([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(m.adjoint(&[0.0, 1.0]).unwrap(), vec![0.0, 0.0]);
        let m = m2([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.adjoint(&[1.0, 0.0]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn dense_dimension_mismatch_reports_lengths() {
        let m = m2([1.0, 0.0, 0.0, 0.0]);
        let err = m.forward(&[1.0, 0.0, 0.0]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('2') && msg.contains('3'), "{msg}");
    }

    #[test]
    fn adjoint_identity_random_5x3() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = DenseMatrix::gaussian(5, 3, &mut rng);
        for _ in 0..100 {
            let v: Vec<f64> = (0..3).map(|_| rng.sample(StandardNormal)).collect();
            let u: Vec<f64> = (0..5).map(|_| rng.sample(StandardNormal)).collect();
            let lhs = dot(&m.forward(&v).unwrap(), &u);
            let rhs = dot(&v, &m.adjoint(&u).unwrap());
            let scale = m.frobenius_norm() * crate::linalg::norm(&v) * crate::linalg::norm(&u);
            assert!((lhs - rhs).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn counting_starts_at_zero_and_is_exact() {
        let pair = BlackBoxPair::from_dense(m2([1.0, 0.0, 0.0, 0.0]), m2([0.0; 4])).unwrap();
        assert_eq!(pair.call_counts(), (0, 0));
        pair.apply_a(&[1.0, 0.0]).unwrap();
        assert_eq!(pair.call_counts(), (1, 0));
        pair.apply_v_adjoint(&[1.0, 0.0]).unwrap();
        pair.apply_v_adjoint(&[0.0, 1.0]).unwrap();
        assert_eq!(pair.call_counts(), (1, 2));
    }

    #[test]
    fn pair_rejects_mismatched_oracles() {
        let a = DenseMatrix::zeros(3, 2);
        let v = DenseMatrix::zeros(2, 2);
        assert!(BlackBoxPair::from_dense(a, v).is_err());
    }

    #[test]
    fn scaled_and_composed_behave() {
        let m = m2([1.0, 2.0, 3.0, 4.0]);
        let s = Scaled {
            alpha: 2.0,
            inner: m.clone(),
        };
        assert_eq!(s.apply(&[1.0, 0.0]), vec![2.0, 6.0]);
        let c = Composed {
            outer: m.clone(),
            inner: DenseMatrix::identity(2),
        };
        assert_eq!(c.apply(&[0.0, 1.0]), m.forward(&[0.0, 1.0]).unwrap());
        assert_eq!(
            c.apply_adjoint(&[1.0, 1.0]),
            m.adjoint(&[1.0, 1.0]).unwrap()
        );
    }

    proptest! {
        // Linearity of the dense adapters within floating tolerance.
        #[test]
        fn dense_forward_is_linear(seed in 0u64..1000, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = DenseMatrix::gaussian(4, 3, &mut rng);
            let v1: Vec<f64> = (0..3).map(|_| rng.sample(StandardNormal)).collect();
            let v2: Vec<f64> = (0..3).map(|_| rng.sample(StandardNormal)).collect();
            let mixed: Vec<f64> = v1.iter().zip(&v2).map(|(a, b)| alpha * a + beta * b).collect();
            let lhs = m.forward(&mixed).unwrap();
            let f1 = m.forward(&v1).unwrap();
            let f2 = m.forward(&v2).unwrap();
            let scale = m.frobenius_norm() * (1.0 + alpha.abs() + beta.abs());
            for i in 0..4 {
                prop_assert!((lhs[i] - (alpha * f1[i] + beta * f2[i])).abs() <= 1e-12 * scale.max(1.0));
            }
        }
    }
}
