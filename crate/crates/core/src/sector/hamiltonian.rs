//! Exact Hamiltonian of one excitation sector in the photon-number x atomic
//! bitmask basis.
//!
//! On resonance `H_0 = a^dag a + S_z` is the constant `k - N/2` inside the
//! sector. `H_I = a J_+ + a^dag J_-` links `(n + 1, A)` and `(n, A + {i})`
//! with amplitude `sqrt(n + 1) kappa_i`.

use std::sync::Arc;

use super::basis::{sector_dimension, SectorBasis};
use super::state::StateVector;
use super::truncated::{embed_row1, TruncatedTridiagonal};
use crate::coupling::CouplingProfile;
use crate::eigen::{lanczos_lowest, lowest_eigenpair_dense, DenseMatrix, LanczosOptions, SymmetricOperator};
use crate::error::{invalid, Error, Result};

/// Largest sector the exact route will build by default.
pub const DEFAULT_SECTOR_CAP: usize = 200_000;

/// Sectors up to this dimension are diagonalized densely.
pub const DENSE_CROSSOVER: usize = 2000;

/// Residual bound for exact eigenpairs, relative to `max(1, ||H||_inf)`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct SparseSectorHamiltonian {
    basis: Arc<SectorBasis>,
    profile: CouplingProfile,
    diagonal: f64,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseSectorHamiltonian {
    pub fn build(profile: &CouplingProfile, k: usize) -> Result<Self> {
        Self::build_with_cap(profile, k, DEFAULT_SECTOR_CAP)
    }

    pub fn build_with_cap(profile: &CouplingProfile, k: usize, cap: usize) -> Result<Self> {
        let n = profile.n_atoms();
        let dim = sector_dimension(n, k);
        if dim > cap as u64 {
            return Err(Error::ResourceLimit {
                what: "sector dimension",
                requested: usize::try_from(dim).unwrap_or(usize::MAX),
                cap,
            });
        }
        let basis = SectorBasis::enumerate(n, k)?.shared();
        let kappas = profile.kappas();
        let mut row_ptr = Vec::with_capacity(basis.dim() + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut row: Vec<(u32, f64)> = Vec::with_capacity(n);
        row_ptr.push(0);
        for idx in 0..basis.dim() {
            let st = basis.state(idx);
            let photons = st.photons as f64;
            row.clear();
            for (i, &kappa) in kappas.iter().enumerate() {
                let bit = 1u64 << i;
                if st.atom_mask & bit != 0 {
                    // a^dag sigma_-^i
                    let target = basis.index_of_mask(st.atom_mask ^ bit);
                    row.push((target as u32, (photons + 1.0).sqrt() * kappa));
                } else if st.photons > 0 {
                    // a sigma_+^i
                    let target = basis.index_of_mask(st.atom_mask | bit);
                    row.push((target as u32, photons.sqrt() * kappa));
                }
            }
            row.sort_by_key(|&(c, _)| c);
            for &(c, v) in &row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Ok(Self {
            basis,
            profile: profile.clone(),
            diagonal: k as f64 - n as f64 / 2.0,
            row_ptr,
            cols,
            vals,
        })
    }

    pub fn basis(&self) -> &Arc<SectorBasis> {
        &self.basis
    }

    pub fn profile(&self) -> &CouplingProfile {
        &self.profile
    }

    /// The constant `k - N/2` contributed by `H_0`.
    pub fn diagonal(&self) -> f64 {
        self.diagonal
    }

    /// Off-diagonal neighbours of basis state `row`.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[row]..self.row_ptr[row + 1];
        self.cols[r.clone()].iter().map(|&c| c as usize).zip(self.vals[r].iter().copied())
    }

    /// All nonzero entries `(row, col, value)`, diagonal included.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.basis.dim()).flat_map(move |r| {
            let diag = (self.diagonal != 0.0).then_some((r, r, self.diagonal));
            diag.into_iter().chain(self.row(r).map(move |(c, v)| (r, c, v)))
        })
    }

    pub fn nnz_offdiagonal(&self) -> usize {
        self.vals.len()
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if !v.same_sector(&self.basis) {
            return invalid("state and Hamiltonian belong to different sectors");
        }
        let mut out = StateVector::zeros(self.basis.clone());
        self.apply_slice(v.amplitudes(), out.amplitudes_mut());
        Ok(out)
    }

    fn apply_slice(&self, x: &[f64], y: &mut [f64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = self.diagonal * x[r];
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[p] * x[self.cols[p] as usize];
            }
            *yr = acc;
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.basis.dim();
        let mut m = DenseMatrix::zeros(n);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }
}

impl SymmetricOperator for SparseSectorHamiltonian {
    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.apply_slice(x, y)
    }

    fn inf_norm(&self) -> f64 {
        (0..self.basis.dim())
            .map(|r| self.diagonal.abs() + self.row(r).map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Lowest eigenpair of an exact sector.
#[derive(Debug, Clone)]
pub struct SectorEigenPair {
    pub value: f64,
    pub state: StateVector,
    pub residual: f64,
}

/// Exact ground state of the sector: dense decomposition up to
/// [`DENSE_CROSSOVER`], restarted Lanczos above, seeded with the row-1
/// ground state.
pub fn ground_state(h: &SparseSectorHamiltonian) -> Result<SectorEigenPair> {
    let scale = h.inf_norm().max(1.0);
    let tol = EIGEN_RESIDUAL_TOL * scale;
    let pair = if h.dim() <= DENSE_CROSSOVER {
        lowest_eigenpair_dense(&h.to_dense())?
    } else {
        let k = h.basis.k();
        let row1 = TruncatedTridiagonal::build(&h.profile, k)?.ground()?;
        let start = embed_row1(&h.profile, &h.basis, &row1.vector)?;
        let opts = LanczosOptions {
            tolerance: 0.5 * tol,
            ..LanczosOptions::default()
        };
        lanczos_lowest(h, start.amplitudes(), &opts)?
    };
    let residual = crate::eigen::residual_norm(h, &pair);
    if residual > tol {
        return Err(Error::NumericFailure {
            reason: format!("sector ground state residual above {tol:e}"),
            residual,
        });
    }
    Ok(SectorEigenPair {
        value: pair.value,
        state: StateVector::new(h.basis.clone(), pair.vector)?,
        residual,
    })
}
