use crate::coupling::CouplingProfile;
use crate::eigen::{eig_sym_dense, DenseMatrix};
use crate::error::{invalid, Result};
use crate::sector::StateVector;
use crate::symmetric::SymTable;

/// Basis order of the pair state: `gg, ge, eg, ee` for atoms `(i, j)`,
/// i.e. index `2 * a_i + a_j` with `a = 1` for an excited atom.
pub const GG: usize = 0;
pub const GE: usize = 1;
pub const EG: usize = 2;
pub const EE: usize = 3;

pub const DENSITY_TOL: f64 = 1e-10;

/// Reduced state of two atoms. The model is real on resonance, so a real
/// symmetric matrix carries the full state.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity {
    pub matrix: [[f64; 4]; 4],
}

impl TwoQubitDensity {
    pub fn new(matrix: [[f64; 4]; 4]) -> Self {
        Self { matrix }
    }

    /// Pure state `|psi><psi|` from amplitudes in `gg, ge, eg, ee` order.
    pub fn pure(amps: [f64; 4]) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (a, row) in m.iter_mut().enumerate() {
            for (b, x) in row.iter_mut().enumerate() {
                *x = amps[a] * amps[b];
            }
        }
        Self { matrix: m }
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|a| self.matrix[a][a]).sum()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..4).all(|a| (0..a).all(|b| (self.matrix[a][b] - self.matrix[b][a]).abs() <= tol))
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let rows: Vec<Vec<f64>> = self.matrix.iter().map(|r| r.to_vec()).collect();
        Ok(eig_sym_dense(&DenseMatrix::from_rows(&rows)?)?.into_iter().map(|p| p.value).collect())
    }

    /// Unit trace, symmetric and positive semidefinite within [`DENSITY_TOL`].
    pub fn validate(&self) -> Result<()> {
        if !self.is_symmetric(DENSITY_TOL) {
            return invalid("pair density matrix is not symmetric");
        }
        if (self.trace() - 1.0).abs() > DENSITY_TOL {
            return invalid(format!("pair density matrix has trace {}", self.trace()));
        }
        let min = self.eigenvalues()?[0];
        if min < -DENSITY_TOL {
            return invalid(format!("pair density matrix has negative eigenvalue {min:e}"));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &TwoQubitDensity) -> f64 {
        self.matrix
            .iter()
            .flatten()
            .zip(other.matrix.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Traces the photon register and every atom except `i` and `j` out of a
/// normalized sector state.
pub fn reduce_pair_from_sector_state(v: &StateVector, i: usize, j: usize) -> Result<TwoQubitDensity> {
    let basis = v.basis();
    let n = basis.n_atoms();
    if i >= n || j >= n || i == j {
        return invalid(format!("invalid atom pair ({i}, {j}) for {n} atoms"));
    }
    if !v.is_normalized(DENSITY_TOL) {
        return invalid(format!("state has norm {}", v.norm()));
    }
    let (bi, bj) = (1u64 << i, 1u64 << j);
    let local = |a: usize| (if a & 2 != 0 { bi } else { 0 }) | (if a & 1 != 0 { bj } else { 0 });
    let amps = v.amplitudes();
    let mut m = [[0.0; 4]; 4];
    for (t, &x) in amps.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        let mask = basis.mask(t);
        let rest = mask & !(bi | bj);
        let ab = 2 * usize::from(mask & bi != 0) + usize::from(mask & bj != 0);
        // Partners share the photon number, so only equal pair popcounts mix.
        for ab2 in 0..4usize {
            if ab2.count_ones() != ab.count_ones() {
                continue;
            }
            let partner = basis.index_of_mask(rest | local(ab2));
            m[ab][ab2] += x * amps[partner];
        }
    }
    Ok(TwoQubitDensity { matrix: m })
}

/// Pair reduction of the field-traced row-1 state
/// `rho = sum_s |A_s|^2 |s_bar><s_bar|`, evaluated from exclusion sums:
/// with `e` over all `kappa^2` and `e'` without atoms `i, j`,
///
/// - `gg`: `e'_s / e_s`
/// - `ge`: `kappa_j^2 e'_{s-1} / e_s`, `eg`: `kappa_i^2 e'_{s-1} / e_s`
/// - `ee`: `kappa_i^2 kappa_j^2 e'_{s-2} / e_s`
/// - `ge-eg` coherence: `kappa_i kappa_j e'_{s-1} / e_s`
pub fn reduce_pair_from_row1_mixture(
    a_coeffs: &[f64],
    profile: &CouplingProfile,
    i: usize,
    j: usize,
) -> Result<TwoQubitDensity> {
    profile.check_pair(i, j)?;
    let total: f64 = a_coeffs.iter().map(|a| a * a).sum();
    if a_coeffs.is_empty() || (total - 1.0).abs() > DENSITY_TOL {
        return invalid(format!("row-1 coefficients have squared norm {total}"));
    }
    let smax = a_coeffs.len() - 1;
    if smax > profile.n_atoms() {
        return invalid(format!(
            "{} row-1 coefficients for {} atoms",
            a_coeffs.len(),
            profile.n_atoms()
        ));
    }
    let full = SymTable::from_profile(profile, smax);
    let excl = SymTable::excluding(profile, i, j, smax)?;
    let (ki, kj) = (profile.kappa(i), profile.kappa(j));
    let mut m = [[0.0; 4]; 4];
    for (s, &a) in a_coeffs.iter().enumerate() {
        let w = a * a / full.elems()[s];
        let s = s as isize;
        m[GG][GG] += w * excl.elem(s);
        m[GE][GE] += w * kj * kj * excl.elem(s - 1);
        m[EG][EG] += w * ki * ki * excl.elem(s - 1);
        m[EE][EE] += w * ki * ki * kj * kj * excl.elem(s - 2);
        m[GE][EG] += w * ki * kj * excl.elem(s - 1);
    }
    m[EG][GE] = m[GE][EG];
    Ok(TwoQubitDensity { matrix: m })
}
