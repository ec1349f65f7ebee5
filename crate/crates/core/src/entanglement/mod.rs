//! Two-atom reduced states and their concurrence.

mod analytic;
mod audit;
mod density;
mod wootters;

pub use analytic::{
    concurrence_analytic_general, concurrence_analytic_k1, concurrence_analytic_k2, concurrence_general_validated,
    concurrence_general_weighted, concurrence_printed_k2, concurrence_row1_ground, concurrence_row1_oracle, concurrence_sector_oracle,
    k2_ground_coefficients, ConcurrenceMethod, ConcurrenceResult, FactorialWeight, ValidatedConcurrence,
};
pub use audit::{formula_audit, FormulaAuditRow};
pub use density::{
    reduce_pair_from_row1_mixture, reduce_pair_from_sector_state, TwoQubitDensity, DENSITY_TOL, EE, EG, GE, GG,
};
pub use wootters::{wootters_concurrence, x_state_concurrence};
