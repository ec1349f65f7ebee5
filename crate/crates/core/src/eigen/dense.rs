//! Dense real symmetric eigensolver: Householder reduction to tridiagonal
//! form followed by implicit QL.

use super::tridiagonal::{tridiagonal_eigen, tridiagonal_inverse_iteration};
use super::{fix_sign, EigenPair};
use crate::error::{invalid, Result};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return invalid("matrix rows must all have length equal to the row count");
        }
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        let scale = self.data.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
        (0..self.n).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= rel_tol * scale))
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// `A = Q T Q^T` with `Q = H_0 H_1 ... H_{n-3}`; reflector `k` acts on
/// indices `k + 1..n` as `I - 2 v v^T` with unit `v`.
struct Tridiagonalization {
    diag: Vec<f64>,
    off: Vec<f64>,
    reflectors: Vec<Option<Vec<f64>>>,
}

impl Tridiagonalization {
    fn new(m: &DenseMatrix) -> Self {
        let n = m.n;
        let mut a = m.data.clone();
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n.saturating_sub(1)];
        let mut reflectors = Vec::with_capacity(n.saturating_sub(2));

        for k in 0..n.saturating_sub(2) {
            diag[k] = a[k * n + k];
            let len = n - k - 1;
            let x = &a[k * n + k + 1..(k + 1) * n];
            let xnorm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let tail = x[1..].iter().map(|v| v * v).sum::<f64>();
            if tail == 0.0 {
                off[k] = x[0];
                reflectors.push(None);
                continue;
            }
            let alpha = if x[0] > 0.0 { -xnorm } else { xnorm };
            let mut v = x.to_vec();
            v[0] -= alpha;
            let vnorm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
            v.iter_mut().for_each(|t| *t /= vnorm);
            off[k] = alpha;

            // Trailing block B <- H B H = B - v q^T - q v^T,
            // p = 2 B v, q = p - (v^T p) v.
            let base = k + 1;
            let mut p = vec![0.0; len];
            for (r, pr) in p.iter_mut().enumerate() {
                let row = &a[(base + r) * n + base..(base + r + 1) * n];
                *pr = 2.0 * row.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>();
            }
            let vp: f64 = v.iter().zip(&p).map(|(x, y)| x * y).sum();
            let q: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - vp * vi).collect();
            for r in 0..len {
                let (vr, qr) = (v[r], q[r]);
                let row = &mut a[(base + r) * n + base..(base + r + 1) * n];
                for ((x, vc), qc) in row.iter_mut().zip(&v).zip(&q) {
                    *x -= vr * qc + qr * vc;
                }
            }
            reflectors.push(Some(v));
        }
        if n >= 2 {
            diag[n - 2] = a[(n - 2) * n + n - 2];
            off[n - 2] = a[(n - 1) * n + n - 2];
        }
        if n >= 1 {
            diag[n - 1] = a[n * n - 1];
        }
        Self {
            diag,
            off,
            reflectors,
        }
    }

    /// Maps a tridiagonal-basis vector back to the original basis.
    fn back_transform(&self, y: &mut [f64]) {
        for (k, v) in self.reflectors.iter().enumerate().rev() {
            if let Some(v) = v {
                let seg = &mut y[k + 1..];
                let dot: f64 = seg.iter().zip(v).map(|(a, b)| a * b).sum();
                seg.iter_mut().zip(v).for_each(|(a, b)| *a -= 2.0 * dot * b);
            }
        }
    }
}

fn check_symmetric(m: &DenseMatrix) -> Result<()> {
    if !m.is_symmetric(1e-12) {
        return invalid("matrix is not symmetric within relative tolerance 1e-12");
    }
    Ok(())
}

/// Full eigendecomposition, values ascending, vectors sign-fixed.
pub fn eig_sym_dense(m: &DenseMatrix) -> Result<Vec<EigenPair>> {
    check_symmetric(m)?;
    let t = Tridiagonalization::new(m);
    let (vals, vecs) = tridiagonal_eigen(&t.diag, &t.off, true)?;
    Ok(vals
        .into_iter()
        .zip(vecs.expect("vectors requested"))
        .map(|(value, mut vector)| {
            t.back_transform(&mut vector);
            fix_sign(&mut vector);
            EigenPair { value, vector }
        })
        .collect())
}

/// Gap below which the two lowest eigenvalues are treated as degenerate.
pub(crate) const DEGENERACY_GAP: f64 = 1e-10;

/// Lowest eigenpair. A single eigenvector is formed when the ground level is
/// isolated; a degenerate ground level falls back to the full decomposition
/// and the tie-break rule of [`select_ground`].
pub fn lowest_eigenpair_dense(m: &DenseMatrix) -> Result<EigenPair> {
    check_symmetric(m)?;
    if m.n == 0 {
        return invalid("empty matrix has no eigenpairs");
    }
    let t = Tridiagonalization::new(m);
    let (vals, _) = tridiagonal_eigen(&t.diag, &t.off, false)?;
    if vals.len() > 1 && vals[1] - vals[0] < DEGENERACY_GAP {
        return Ok(select_ground(eig_sym_dense(m)?));
    }
    let mut vector = tridiagonal_inverse_iteration(&t.diag, &t.off, vals[0]);
    t.back_transform(&mut vector);
    let norm = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
    vector.iter_mut().for_each(|x| *x /= norm);
    fix_sign(&mut vector);
    Ok(EigenPair {
        value: vals[0],
        vector,
    })
}

/// Picks the ground pair from an ascending, sign-fixed decomposition: among
/// eigenvalues within [`DEGENERACY_GAP`] of the lowest, the vector that is
/// lexicographically largest.
pub fn select_ground(pairs: Vec<EigenPair>) -> EigenPair {
    let lowest = pairs[0].value;
    pairs
        .into_iter()
        .take_while(|p| p.value - lowest < DEGENERACY_GAP)
        .reduce(|best, cand| {
            let ord = cand
                .vector
                .iter()
                .zip(&best.vector)
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal);
            if ord.is_gt() {
                cand
            } else {
                best
            }
        })
        .expect("at least one eigenpair")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn residual(m: &DenseMatrix, p: &EigenPair) -> f64 {
        m.matvec(&p.vector)
            .iter()
            .zip(&p.vector)
            .map(|(hv, v)| (hv - p.value * v).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    fn pseudo_random_symmetric(n: usize, seed: u64) -> DenseMatrix {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let x = next();
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    #[test]
    fn identity_eigenvalues() {
        let pairs = eig_sym_dense(&DenseMatrix::identity(3)).unwrap();
        for p in &pairs {
            assert_relative_eq!(p.value, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn known_quartic() {
        // Path-graph Laplacian on four vertices: characteristic polynomial
        // x (x - 2) (x^2 - 4x + 2), roots 0, 2 - sqrt 2, 2, 2 + sqrt 2.
        let m = DenseMatrix::from_rows(&[
            vec![1.0, -1.0, 0.0, 0.0],
            vec![-1.0, 2.0, -1.0, 0.0],
            vec![0.0, -1.0, 2.0, -1.0],
            vec![0.0, 0.0, -1.0, 1.0],
        ])
        .unwrap();
        let vals: Vec<f64> = eig_sym_dense(&m).unwrap().iter().map(|p| p.value).collect();
        let s = 2f64.sqrt();
        for (v, want) in vals.iter().zip([0.0, 2.0 - s, 2.0, 2.0 + s]) {
            assert!((v - want).abs() < 1e-10, "{v} vs {want}");
            let charpoly = v * (v - 2.0) * (v * v - 4.0 * v + 2.0);
            assert!(charpoly.abs() < 1e-10);
        }
    }

    #[test]
    fn random_matrix_contracts() {
        let m = pseudo_random_symmetric(30, 7);
        let pairs = eig_sym_dense(&m).unwrap();
        let scale = m.inf_norm().max(1.0);
        for p in &pairs {
            assert!(residual(&m, p) <= 1e-10 * scale);
        }
        for a in 0..30 {
            for b in 0..30 {
                let dot: f64 = pairs[a].vector.iter().zip(&pairs[b].vector).map(|(x, y)| x * y).sum();
                assert!((dot - f64::from(u8::from(a == b))).abs() <= 1e-9);
            }
        }
        let total: f64 = pairs.iter().map(|p| p.value).sum();
        assert!((total - m.trace()).abs() <= 1e-9 * m.trace().abs().max(1.0));
    }

    #[test]
    fn lowest_pair_matches_full() {
        let m = pseudo_random_symmetric(25, 11);
        let full = eig_sym_dense(&m).unwrap();
        let low = lowest_eigenpair_dense(&m).unwrap();
        assert_relative_eq!(low.value, full[0].value, epsilon = 1e-12);
        for (a, b) in low.vector.iter().zip(&full[0].vector) {
            assert_relative_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn first_component_sign_is_positive() {
        let m = pseudo_random_symmetric(8, 3);
        for p in eig_sym_dense(&m).unwrap() {
            let first = p.vector.iter().find(|x| x.abs() > 1e-12).unwrap();
            assert!(*first > 0.0);
        }
    }

    #[test]
    fn degenerate_ground_is_deterministic() {
        let m = DenseMatrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 5.0],
        ])
        .unwrap();
        let g = lowest_eigenpair_dense(&m).unwrap();
        assert_relative_eq!(g.value, 1.0);
        assert_relative_eq!(g.vector[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(eig_sym_dense(&m).is_err());
    }
}
