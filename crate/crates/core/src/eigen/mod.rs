//! Symmetric eigensolvers for the truncated and exact Hamiltonians.
//!
//! Three routes share one contract (ascending values, unit vectors whose
//! first nonzero component is positive):
//! - implicit QL for tridiagonal matrices,
//! - Householder + QL for dense matrices,
//! - restarted Lanczos for large sparse sectors.

mod dense;
mod lanczos;
mod tridiagonal;

pub use dense::{eig_sym_dense, lowest_eigenpair_dense, select_ground, DenseMatrix};
pub use lanczos::{lanczos_lowest, LanczosOptions};
pub use tridiagonal::{tridiagonal_eigen, tridiagonal_inverse_iteration};

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// A real symmetric linear operator applied matrix-free.
pub trait SymmetricOperator {
    fn dim(&self) -> usize;
    /// `y = A x`; `y` is overwritten.
    fn apply(&self, x: &[f64], y: &mut [f64]);
    /// Maximum absolute row sum.
    fn inf_norm(&self) -> f64;
}

impl SymmetricOperator for DenseMatrix {
    fn dim(&self) -> usize {
        DenseMatrix::dim(self)
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.copy_from_slice(&self.matvec(x));
    }

    fn inf_norm(&self) -> f64 {
        DenseMatrix::inf_norm(self)
    }
}

/// Flips `v` so that its first component above round-off is positive.
pub fn fix_sign(v: &mut [f64]) {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * scale) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// `||A v - lambda v||_2`.
pub fn residual_norm<Op: SymmetricOperator + ?Sized>(op: &Op, pair: &EigenPair) -> f64 {
    let mut y = vec![0.0; op.dim()];
    op.apply(&pair.vector, &mut y);
    y.iter()
        .zip(&pair.vector)
        .map(|(a, b)| (a - pair.value * b).powi(2))
        .sum::<f64>()
        .sqrt()
}
