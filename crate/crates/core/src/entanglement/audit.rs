//! Side-by-side comparison of the closed forms against the Wootters value
//! of the same row-1 ground state.

use super::analytic::{
    concurrence_general_weighted, concurrence_printed_k2, concurrence_row1_oracle, FactorialWeight,
};
use crate::coupling::CouplingProfile;
use crate::error::Result;
use crate::sector::TruncatedTridiagonal;

#[derive(Debug, Clone, PartialEq)]
pub struct FormulaAuditRow {
    pub n_atoms: usize,
    pub k: usize,
    pub pair: (usize, usize),
    pub oracle: f64,
    /// General formula with companion-norm factorials, unclamped.
    pub general: f64,
    /// General formula with `M_p^2 = (p!)^2 e'_p`, unclamped.
    pub own_order: f64,
    /// Printed two-excitation expression, `k = 2` only.
    pub printed_k2: Option<f64>,
}

impl FormulaAuditRow {
    pub fn general_error(&self) -> f64 {
        (self.general.clamp(0.0, 1.0) - self.oracle).abs()
    }

    pub fn own_order_error(&self) -> f64 {
        (self.own_order.clamp(0.0, 1.0) - self.oracle).abs()
    }

    pub fn printed_k2_error(&self) -> Option<f64> {
        self.printed_k2.map(|c| (c.clamp(0.0, 1.0) - self.oracle).abs())
    }
}

/// Audits every pair in `pairs` for each `k` in `ks` on the row-1 ground
/// state of `profile`.
pub fn formula_audit(profile: &CouplingProfile, ks: &[usize], pairs: &[(usize, usize)]) -> Result<Vec<FormulaAuditRow>> {
    let mut rows = Vec::with_capacity(ks.len() * pairs.len());
    for &k in ks {
        let a = TruncatedTridiagonal::build(profile, k)?.ground()?.vector;
        for &(i, j) in pairs {
            let oracle = concurrence_row1_oracle(profile, &a, i, j, k)?.value;
            let general = concurrence_general_weighted(profile, &a, i, j, k, FactorialWeight::CompanionNorm)?.raw;
            let own_order = concurrence_general_weighted(profile, &a, i, j, k, FactorialWeight::OwnOrder)?.raw;
            let printed_k2 = if k == 2 { Some(concurrence_printed_k2(profile, i, j)?) } else { None };
            rows.push(FormulaAuditRow {
                n_atoms: profile.n_atoms(),
                k,
                pair: (i, j),
                oracle,
                general,
                own_order,
                printed_k2,
            });
        }
    }
    Ok(rows)
}
