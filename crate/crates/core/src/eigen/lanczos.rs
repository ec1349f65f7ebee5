//! Restarted Lanczos for the lowest eigenpair of a large sparse symmetric
//! operator.
//!
//! Each cycle builds a Krylov basis with full reorthogonalization, takes the
//! lowest Ritz pair of the projected tridiagonal matrix and restarts from
//! that Ritz vector until the true residual drops below tolerance.

use super::tridiagonal::tridiagonal_eigen;
use super::{fix_sign, EigenPair, SymmetricOperator};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LanczosOptions {
    pub krylov_dim: usize,
    pub max_restarts: usize,
    /// Absolute residual target `||H v - lambda v||_2`.
    pub tolerance: f64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            krylov_dim: 60,
            max_restarts: 300,
            tolerance: 1e-10,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

pub fn lanczos_lowest<Op: SymmetricOperator + ?Sized>(
    op: &Op,
    start: &[f64],
    opts: &LanczosOptions,
) -> Result<EigenPair> {
    let n = op.dim();
    assert_eq!(start.len(), n, "start vector length must match operator");
    let m = opts.krylov_dim.min(n).max(1);
    let breakdown = 1e-14 * op.inf_norm().max(1.0);

    let mut v = start.to_vec();
    let s = norm(&v);
    v.iter_mut().for_each(|x| *x /= s);

    let mut w = vec![0.0; n];
    let mut last_residual = f64::INFINITY;
    for _ in 0..opts.max_restarts {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut alpha = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        basis.push(v.clone());
        for j in 0..m {
            op.apply(&basis[j], &mut w);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            // Two passes of classical Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(&w, q);
                    axpy(-c, q, &mut w);
                }
            }
            if j + 1 == m {
                break;
            }
            let b = norm(&w);
            if b < breakdown {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }

        let (vals, vecs) = tridiagonal_eigen(&alpha, &beta, true)?;
        let theta = vals[0];
        let coeffs = &vecs.expect("vectors requested")[0];
        let mut y = vec![0.0; n];
        for (c, q) in coeffs.iter().zip(&basis) {
            axpy(*c, q, &mut y);
        }
        let ny = norm(&y);
        y.iter_mut().for_each(|x| *x /= ny);

        op.apply(&y, &mut w);
        let theta = {
            let rq = dot(&w, &y);
            if rq.is_finite() {
                rq
            } else {
                theta
            }
        };
        let residual = w.iter().zip(&y).map(|(hy, yi)| (hy - theta * yi).powi(2)).sum::<f64>().sqrt();
        if residual <= opts.tolerance || basis.len() == n && residual <= 1e3 * opts.tolerance {
            fix_sign(&mut y);
            return Ok(EigenPair {
                value: theta,
                vector: y,
            });
        }
        last_residual = residual;
        v = y;
    }
    Err(Error::NumericFailure {
        reason: format!("Lanczos did not converge in {} restarts", opts.max_restarts),
        residual: last_residual,
    })
}
