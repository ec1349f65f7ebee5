//! Two-qubit concurrence from its definition.
//!
//! `C = max(0, l1 - l2 - l3 - l4)` where `l_a` are the decreasing square
//! roots of the eigenvalues of `rho (Y x Y) rho* (Y x Y)`. Following
//! Wootters, those are the singular values of `tau = W^T (Y x Y) W`, where
//! the columns of `W` are the subnormalized eigenvectors `sqrt(w_a) v_a` of
//! `rho`. This form avoids the square root of a near-zero eigenvalue, which
//! would turn roundoff of order `eps` into errors of order `sqrt(eps)`. For
//! a complex `rho`, `tau = W^T (Y x Y) conj(W)` is complex symmetric and
//! needs a Takagi factorization; the states of this model are real, so
//! `tau` is real symmetric and its singular values are `|eig(tau)|`.

use super::density::TwoQubitDensity;
use crate::eigen::{eig_sym_dense, DenseMatrix};
use crate::error::Result;

/// `sigma_y x sigma_y` in the `gg, ge, eg, ee` basis (real).
const YY: [[f64; 4]; 4] = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

fn to_dense(m: &[[f64; 4]; 4]) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = m.iter().map(|r| r.to_vec()).collect();
    DenseMatrix::from_rows(&rows).expect("square")
}

fn symmetrize(m: &mut [[f64; 4]; 4]) {
    for i in 0..4 {
        for j in 0..i {
            let avg = 0.5 * (m[i][j] + m[j][i]);
            m[i][j] = avg;
            m[j][i] = avg;
        }
    }
}

/// Wootters concurrence of a valid pair state, in `[0, 1]`.
pub fn wootters_concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    rho.validate()?;
    let eig = eig_sym_dense(&to_dense(&rho.matrix))?;
    let w: Vec<[f64; 4]> = eig
        .iter()
        .map(|p| {
            let s = p.value.max(0.0).sqrt();
            [s * p.vector[0], s * p.vector[1], s * p.vector[2], s * p.vector[3]]
        })
        .collect();
    let mut tau = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            tau[a][b] = (0..4)
                .map(|r| w[a][r] * (0..4).map(|c| YY[r][c] * w[b][c]).sum::<f64>())
                .sum();
        }
    }
    symmetrize(&mut tau);
    let mut lambdas: Vec<f64> = eig_sym_dense(&to_dense(&tau))?.into_iter().map(|p| p.value.abs()).collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Closed form for X-shaped states (`gg-ee` and `ge-eg` coherences only):
/// `2 max(0, |rho_ge,eg| - sqrt(rho_gg rho_ee), |rho_gg,ee| - sqrt(rho_ge rho_eg))`.
pub fn x_state_concurrence(rho: &TwoQubitDensity) -> f64 {
    let m = &rho.matrix;
    let a = m[1][2].abs() - (m[0][0] * m[3][3]).max(0.0).sqrt();
    let b = m[0][3].abs() - (m[1][1] * m[2][2]).max(0.0).sqrt();
    (2.0 * a.max(b)).clamp(0.0, 1.0)
}
