//! Excitation sectors: basis enumeration, exact sparse Hamiltonian, and the
//! row-1 / row-2 truncated descriptions.

mod basis;
mod hamiltonian;
mod state;
mod truncated;

pub use basis::{
    binomial, colex_rank, masks_with_popcount, sector_dimension, BasisState, SectorBasis, MAX_MASK_ATOMS,
};
pub use hamiltonian::{
    ground_state, SectorEigenPair, SparseSectorHamiltonian, DEFAULT_SECTOR_CAP, DENSE_CROSSOVER,
    EIGEN_RESIDUAL_TOL,
};
pub use state::StateVector;
pub use truncated::{
    build_row12_hamiltonian, build_row2_states, collective_level, collective_state, embed_row1, lower_level,
    raise_level, row2_level_states, PerpendicularState, TruncatedTridiagonal, PERPENDICULAR_CUTOFF,
    ROW2_ATOM_CAP,
};
