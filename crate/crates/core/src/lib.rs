//! Inhomogeneous Tavis-Cummings model on resonance: excitation-sector
//! Hamiltonians, exact and truncated spectra, and pairwise atomic
//! concurrence.

pub mod coupling;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod sector;
pub mod symmetric;

pub use coupling::CouplingProfile;
pub use eigen::{EigenPair, SymmetricOperator};
pub use entanglement::{ConcurrenceMethod, ConcurrenceResult, TwoQubitDensity};
pub use error::{Error, Result};
pub use sector::{SectorBasis, SparseSectorHamiltonian, StateVector, TruncatedTridiagonal};
pub use symmetric::SymTable;
