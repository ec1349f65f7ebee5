//! Symmetric tridiagonal eigenproblems: implicit QL with Wilkinson shifts,
//! plus inverse iteration for a single eigenvector.

use crate::error::{Error, Result};

/// Iteration cap per eigenvalue before giving up.
const MAX_QL_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and, when `vectors` is requested, the matching
/// eigenvectors of the symmetric tridiagonal matrix with diagonal `diag` and
/// sub/superdiagonal `off` (`off.len() == diag.len() - 1`).
///
/// Eigenvectors come back as rows: `vecs[i]` belongs to `vals[i]`.
pub fn tridiagonal_eigen(
    diag: &[f64],
    off: &[f64],
    vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>)> {
    let n = diag.len();
    assert!(n == 0 || off.len() == n - 1, "off-diagonal length must be n - 1");
    if n == 0 {
        return Ok((Vec::new(), vectors.then(Vec::new)));
    }
    let mut d = diag.to_vec();
    // e[i] couples i and i + 1; e[n - 1] = 0 terminates the split search.
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z: Option<Vec<Vec<f64>>> = vectors.then(|| {
        (0..n)
            .map(|i| {
                let mut row = vec![0.0; n];
                row[i] = 1.0;
                row
            })
            .collect()
    });

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_QL_SWEEPS {
                    return Err(Error::NumericFailure {
                        reason: format!("tridiagonal QL did not converge for eigenvalue {l}"),
                        residual: e[l].abs(),
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_mut() {
                        let (lo, hi) = z.split_at_mut(i + 1);
                        let (zi, zi1) = (&mut lo[i], &mut hi[0]);
                        for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                            let t = *b;
                            *b = s * *a + c * t;
                            *a = c * *a - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let vals = order.iter().map(|&i| d[i]).collect();
    let vecs = z.map(|z| order.iter().map(|&i| z[i].clone()).collect());
    Ok((vals, vecs))
}

/// Eigenvector of the tridiagonal matrix for the (already converged)
/// eigenvalue `lambda`, by shifted inverse iteration with partial pivoting.
pub fn tridiagonal_inverse_iteration(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let n = diag.len();
    if n == 1 {
        return vec![1.0];
    }
    let scale = diag
        .iter()
        .map(|x| x.abs())
        .chain(off.iter().map(|x| 2.0 * x.abs()))
        .fold(1.0f64, f64::max);
    let tiny = f64::EPSILON * scale;
    let shift = lambda - 8.0 * tiny;

    // Start from a vector with no special symmetry.
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7 + 3) % 11) as f64).collect();
    for _ in 0..3 {
        solve_shifted(diag, off, shift, tiny, &mut x);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
    }
    x
}

/// Solves `(T - shift) y = b` in place with Gaussian elimination and row
/// interchanges; zero pivots are replaced by `tiny`.
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, tiny: f64, b: &mut [f64]) {
    let n = diag.len();
    let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
    let dl = off;
    let mut du = off.to_vec();
    // Second superdiagonal fill-in from row swaps.
    let mut du2 = vec![0.0; n.saturating_sub(2)];

    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            b.swap(i, i + 1);
            b[i + 1] -= fact * b[i];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_by_two() {
        let (vals, _) = tridiagonal_eigen(&[0.0, 0.0], &[3.0], false).unwrap();
        assert_relative_eq!(vals[0], -3.0, epsilon = 1e-14);
        assert_relative_eq!(vals[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn three_by_three_zero_diagonal() {
        let (a, b) = (1.3, 0.4);
        let r = f64::hypot(a, b);
        let (vals, vecs) = tridiagonal_eigen(&[0.0; 3], &[a, b], true).unwrap();
        assert_relative_eq!(vals[0], -r, epsilon = 1e-14);
        assert!(vals[1].abs() < 1e-14);
        assert_relative_eq!(vals[2], r, epsilon = 1e-14);
        // ground vector is (a, -r, b) / (sqrt(2) r) up to sign
        let v = &vecs.unwrap()[0];
        let sign = v[0].signum();
        let expect = [a, -r, b].map(|x| sign * x / (2f64.sqrt() * r));
        for (x, y) in v.iter().zip(expect) {
            assert_relative_eq!(*x, y, epsilon = 1e-14);
        }
    }

    #[test]
    fn residuals_and_orthogonality() {
        let n = 40;
        let diag: Vec<f64> = (0..n).map(|i| ((i * 37) % 13) as f64 * 0.3 - 1.0).collect();
        let off: Vec<f64> = (0..n - 1).map(|i| 0.5 + ((i * 5) % 7) as f64 * 0.1).collect();
        let (vals, vecs) = tridiagonal_eigen(&diag, &off, true).unwrap();
        let vecs = vecs.unwrap();
        for (lam, v) in vals.iter().zip(&vecs) {
            for i in 0..n {
                let mut hv = diag[i] * v[i];
                if i > 0 {
                    hv += off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    hv += off[i] * v[i + 1];
                }
                assert!((hv - lam * v[i]).abs() < 1e-12);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn inverse_iteration_matches_ql_vector() {
        let diag = [0.2, -0.7, 1.1, 0.0, 0.4];
        let off = [0.9, 0.3, 1.2, 0.6];
        let (vals, vecs) = tridiagonal_eigen(&diag, &off, true).unwrap();
        let y = tridiagonal_inverse_iteration(&diag, &off, vals[0]);
        let dot: f64 = y.iter().zip(&vecs.unwrap()[0]).map(|(a, b)| a * b).sum();
        assert_relative_eq!(dot.abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn decoupled_blocks() {
        let (vals, _) = tridiagonal_eigen(&[1.0, 2.0, 3.0], &[0.0, 0.0], false).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        let y = tridiagonal_inverse_iteration(&[1.0, 2.0, 3.0], &[0.0, 0.0], 1.0);
        assert_relative_eq!(y[0].abs(), 1.0, epsilon = 1e-12);
    }
}
