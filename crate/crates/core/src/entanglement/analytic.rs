//! Closed-form pair concurrence for ground states of the row-1 description.
//!
//! For `|Psi> = sum_s A_s |s_bar>|k - s>` the field-traced pair state is an
//! X-state whose only live coherence is `ge-eg`, so
//!
//! `C = 2 kappa_i kappa_j [ sum_s A_s^2 e'_{s-1}/e_s
//!      - sqrt( sum_s A_s^2 e'_{s-2}/e_s * sum_s' A_s'^2 e'_s'/e_s' ) ]`
//!
//! with `e` the elementary symmetric functions of all `kappa^2` and `e'` those
//! without atoms `i, j`. In terms of `N_s^2 = (s!)^2 e_s` this is the usual
//! `M`-sum form when each `M^2` carries the factorial of the `N` it divides.

use super::density::{reduce_pair_from_row1_mixture, reduce_pair_from_sector_state, DENSITY_TOL};
use super::wootters::wootters_concurrence;
use crate::coupling::CouplingProfile;
use crate::error::{invalid, Result};
use crate::sector::{StateVector, TruncatedTridiagonal};
use crate::symmetric::SymTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConcurrenceMethod {
    AnalyticK1,
    AnalyticK2,
    AnalyticGeneral,
    WoottersOracle,
}

impl ConcurrenceMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::AnalyticK1 => "analytic_k1",
            Self::AnalyticK2 => "analytic_k2",
            Self::AnalyticGeneral => "analytic_general",
            Self::WoottersOracle => "wootters_oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceResult {
    /// Concurrence, clamped to `[0, 1]`.
    pub value: f64,
    /// Formula value before clamping; negative values mean a separable pair.
    pub raw: f64,
    pub method: ConcurrenceMethod,
    pub pair: (usize, usize),
    pub k: usize,
}

impl ConcurrenceResult {
    fn new(raw: f64, method: ConcurrenceMethod, pair: (usize, usize), k: usize) -> Self {
        Self {
            value: raw.clamp(0.0, 1.0),
            raw,
            method,
            pair,
            k,
        }
    }

    pub fn was_clamped(&self) -> bool {
        self.raw < 0.0
    }
}

/// Factorial carried by the `M_p^2` sums of the general formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorialWeight {
    /// `M^2` takes the factorial of the `N_s` it is divided by, which makes
    /// the formula equal to the Wootters value of the row-1 state.
    CompanionNorm,
    /// `M_p^2 = (p!)^2 e'_p` literally. Off by `1/s^2` and `1/(s(s-1))^2`
    /// per term; kept for the formula audit.
    OwnOrder,
}

fn pair_kappa(profile: &CouplingProfile, i: usize, j: usize) -> Result<f64> {
    profile.check_pair(i, j)?;
    Ok(profile.kappa(i) * profile.kappa(j))
}

/// `|kappa_i kappa_j| / sum kappa^2`.
pub fn concurrence_analytic_k1(profile: &CouplingProfile, i: usize, j: usize) -> Result<ConcurrenceResult> {
    let kk = pair_kappa(profile, i, j)?;
    let total: f64 = profile.kappa_squares().iter().sum();
    Ok(ConcurrenceResult::new(kk.abs() / total, ConcurrenceMethod::AnalyticK1, (i, j), 1))
}

/// Ground-state coefficients `(alpha, -1/sqrt 2, beta)` of the `k = 2`
/// row-1 tridiagonal.
pub fn k2_ground_coefficients(profile: &CouplingProfile) -> Result<(f64, f64)> {
    let e = SymTable::from_profile(profile, 2);
    let (n1, n2) = (e.norm(1)?, e.norm(2)?);
    let d = (4.0 * n1.powi(4) + 2.0 * n2 * n2).sqrt();
    Ok((2f64.sqrt() * n1 * n1 / d, n2 / d))
}

/// Two-excitation ground state:
///
/// `2 |kappa_i kappa_j| [1/(2 N_1^2) + 4 beta^2 M_1^2/N_2^2
///   - (2 beta/N_2) (alpha^2 + M_1^2/(2 N_1^2) + beta^2 M_2^2/N_2^2)^(1/2)]`
///
/// with `M_1^2 = e'_1` and `M_2^2 = 4 e'_2`.
pub fn concurrence_analytic_k2(profile: &CouplingProfile, i: usize, j: usize) -> Result<ConcurrenceResult> {
    let kk = pair_kappa(profile, i, j)?;
    let e = SymTable::from_profile(profile, 2);
    let excl = SymTable::excluding(profile, i, j, 2)?;
    let (n1, n2) = (e.norm(1)?, e.norm(2)?);
    let (alpha, beta) = k2_ground_coefficients(profile)?;
    let m1 = excl.elem(1);
    let m2 = 4.0 * excl.elem(2);
    let root = (alpha * alpha + m1 / (2.0 * n1 * n1) + beta * beta * m2 / (n2 * n2)).sqrt();
    let raw = 2.0 * kk.abs() * (1.0 / (2.0 * n1 * n1) + 4.0 * beta * beta * m1 / (n2 * n2) - 2.0 * beta / n2 * root);
    Ok(ConcurrenceResult::new(raw, ConcurrenceMethod::AnalyticK2, (i, j), 2))
}

/// The two-excitation expression in its commonly printed form, with
/// `beta^2 M_1^2 / N_2^2` and `beta / N_2` in place of `4 beta^2 M_1^2 / N_2^2`
/// and `2 beta / N_2`, and `M_p^2 = e'_p`. It does not describe the
/// two-excitation ground state and is only used by the formula audit.
pub fn concurrence_printed_k2(profile: &CouplingProfile, i: usize, j: usize) -> Result<f64> {
    let kk = pair_kappa(profile, i, j)?;
    let e = SymTable::from_profile(profile, 2);
    let excl = SymTable::excluding(profile, i, j, 2)?;
    let (n1, n2) = (e.norm(1)?, e.norm(2)?);
    let (alpha, beta) = k2_ground_coefficients(profile)?;
    let (m1, m2) = (excl.elem(1), excl.elem(2));
    let root = (alpha * alpha + m1 / (2.0 * n1 * n1) + beta * beta * m2 / (n2 * n2)).sqrt();
    Ok(2.0 * kk.abs() * (1.0 / (2.0 * n1 * n1) + beta * beta * m1 / (n2 * n2) - beta / n2 * root))
}

fn check_coefficients(profile: &CouplingProfile, a_coeffs: &[f64], k: usize) -> Result<()> {
    let want = k.min(profile.n_atoms()) + 1;
    if a_coeffs.len() != want {
        return invalid(format!(
            "expected {want} row-1 coefficients for k = {k}, got {}",
            a_coeffs.len()
        ));
    }
    let total: f64 = a_coeffs.iter().map(|a| a * a).sum();
    if (total - 1.0).abs() > DENSITY_TOL {
        return invalid(format!("row-1 coefficients have squared norm {total}"));
    }
    Ok(())
}

/// General formula for any row-1 state `sum_s A_s |s_bar>|k - s>`.
/// `a_coeffs` holds `A_0 ..= A_min(k, N)`.
pub fn concurrence_analytic_general(
    profile: &CouplingProfile,
    a_coeffs: &[f64],
    i: usize,
    j: usize,
    k: usize,
) -> Result<ConcurrenceResult> {
    concurrence_general_weighted(profile, a_coeffs, i, j, k, FactorialWeight::CompanionNorm)
}

pub fn concurrence_general_weighted(
    profile: &CouplingProfile,
    a_coeffs: &[f64],
    i: usize,
    j: usize,
    k: usize,
    weight: FactorialWeight,
) -> Result<ConcurrenceResult> {
    let kk = pair_kappa(profile, i, j)?;
    check_coefficients(profile, a_coeffs, k)?;
    let smax = a_coeffs.len() - 1;
    let e = SymTable::from_profile(profile, smax);
    let excl = SymTable::excluding(profile, i, j, smax)?;

    let mut linear = 0.0;
    let mut low = 0.0;
    let mut high = 0.0;
    for (s, &a) in a_coeffs.iter().enumerate() {
        let w = a * a / e.elems()[s];
        let sf = s as f64;
        let (w1, w2) = match weight {
            FactorialWeight::CompanionNorm => (1.0, 1.0),
            FactorialWeight::OwnOrder if s == 0 => (0.0, 0.0),
            FactorialWeight::OwnOrder if s == 1 => (1.0, 0.0),
            FactorialWeight::OwnOrder => (1.0 / (sf * sf), 1.0 / (sf * (sf - 1.0)).powi(2)),
        };
        let si = s as isize;
        linear += w * w1 * excl.elem(si - 1);
        low += w * w2 * excl.elem(si - 2);
        high += w * excl.elem(si);
    }
    let raw = 2.0 * kk.abs() * (linear - (low * high).sqrt());
    Ok(ConcurrenceResult::new(raw, ConcurrenceMethod::AnalyticGeneral, (i, j), k))
}

/// Wootters concurrence of the row-1 mixture state.
pub fn concurrence_row1_oracle(
    profile: &CouplingProfile,
    a_coeffs: &[f64],
    i: usize,
    j: usize,
    k: usize,
) -> Result<ConcurrenceResult> {
    check_coefficients(profile, a_coeffs, k)?;
    let rho = reduce_pair_from_row1_mixture(a_coeffs, profile, i.min(j), i.max(j))?;
    let c = wootters_concurrence(&rho)?;
    Ok(ConcurrenceResult::new(c, ConcurrenceMethod::WoottersOracle, (i, j), k))
}

/// Wootters concurrence of a full sector state, for example an exact
/// ground state. The pair is reduced in ascending order so that `(i, j)`
/// and `(j, i)` give identical bits.
pub fn concurrence_sector_oracle(v: &StateVector, i: usize, j: usize) -> Result<ConcurrenceResult> {
    let rho = reduce_pair_from_sector_state(v, i.min(j), i.max(j))?;
    let c = wootters_concurrence(&rho)?;
    Ok(ConcurrenceResult::new(c, ConcurrenceMethod::WoottersOracle, (i, j), v.basis().k()))
}

/// General formula together with its oracle value.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConcurrence {
    pub analytic: ConcurrenceResult,
    pub oracle: ConcurrenceResult,
}

impl ValidatedConcurrence {
    pub fn discrepancy(&self) -> f64 {
        (self.analytic.value - self.oracle.value).abs()
    }
}

pub fn concurrence_general_validated(
    profile: &CouplingProfile,
    a_coeffs: &[f64],
    i: usize,
    j: usize,
    k: usize,
) -> Result<ValidatedConcurrence> {
    Ok(ValidatedConcurrence {
        analytic: concurrence_analytic_general(profile, a_coeffs, i, j, k)?,
        oracle: concurrence_row1_oracle(profile, a_coeffs, i, j, k)?,
    })
}

/// General formula on the ground state of the `k`-excitation row-1
/// tridiagonal.
pub fn concurrence_row1_ground(profile: &CouplingProfile, k: usize, i: usize, j: usize) -> Result<ConcurrenceResult> {
    let ground = TruncatedTridiagonal::build(profile, k)?.ground()?;
    concurrence_analytic_general(profile, &ground.vector, i, j, k)
}
