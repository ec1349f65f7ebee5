//! Elementary symmetric polynomials of the squared couplings.
//!
//! The collective-state norms are `N_p = p! sqrt(e_p(kappa^2))` and the pair
//! exclusion sums are `M_p = p! sqrt(e_p(kappa^2 without i, j))`. Both are
//! evaluated from one table of `e_0..e_pmax`, built with the one-pass
//! recurrence `e_p <- e_p + v e_{p-1}` (descending `p`). Every term is
//! nonnegative, so the recurrence never cancels.

use crate::coupling::CouplingProfile;
use crate::error::{invalid, Error, Result};

/// Largest order for which `p!` is formed explicitly.
const MAX_EXPLICIT_FACTORIAL: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTable {
    values: Vec<f64>,
    elems: Vec<f64>,
}

impl SymTable {
    pub fn new(values: &[f64], max_order: usize) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return invalid(format!("symmetric table values must be nonnegative, got {v}"));
        }
        let mut elems = vec![0.0; max_order + 1];
        elems[0] = 1.0;
        for (count, &v) in values.iter().enumerate() {
            let top = max_order.min(count + 1);
            for p in (1..=top).rev() {
                elems[p] += v * elems[p - 1];
            }
        }
        Ok(Self {
            values: values.to_vec(),
            elems,
        })
    }

    /// Table over all squared couplings of `profile`.
    pub fn from_profile(profile: &CouplingProfile, max_order: usize) -> Self {
        Self::new(&profile.kappa_squares(), max_order).expect("squared couplings are nonnegative")
    }

    /// Table over the squared couplings with atoms `i` and `j` left out.
    pub fn excluding(profile: &CouplingProfile, i: usize, j: usize, max_order: usize) -> Result<Self> {
        let rest = profile.kappa_squares_excluding(i, j)?;
        Self::new(&rest, max_order)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_order(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn elems(&self) -> &[f64] {
        &self.elems
    }

    /// `e_p`, with `e_p = 0` for negative `p` and beyond the table.
    pub fn elem(&self, p: isize) -> f64 {
        usize::try_from(p)
            .ok()
            .and_then(|p| self.elems.get(p))
            .copied()
            .unwrap_or(0.0)
    }

    fn check_order(&self, p: usize) -> Result<()> {
        if p > self.max_order() {
            return invalid(format!("order {p} exceeds table order {}", self.max_order()));
        }
        Ok(())
    }

    /// `p! sqrt(e_p)`: `N_p` over the full table, `M_p` over an exclusion
    /// table.
    pub fn norm(&self, p: usize) -> Result<f64> {
        self.check_order(p)?;
        let e = self.elems[p];
        if e == 0.0 {
            return Ok(0.0);
        }
        if p <= MAX_EXPLICIT_FACTORIAL {
            let fact: f64 = (1..=p).map(|q| q as f64).product();
            return Ok(fact * e.sqrt());
        }
        (1..=p).try_fold(1.0, |acc, q| Ok(acc * self.norm_ratio(q)?))
    }

    /// `N_p / N_{p-1} = p sqrt(e_p / e_{p-1})`, free of factorials.
    pub fn norm_ratio(&self, p: usize) -> Result<f64> {
        if p == 0 {
            return invalid("norm ratio needs order >= 1");
        }
        self.check_order(p)?;
        let below = self.elems[p - 1];
        if below == 0.0 {
            return Err(Error::DegenerateSubspace {
                order: p - 1,
                n_values: self.values.len(),
            });
        }
        Ok(p as f64 * (self.elems[p] / below).sqrt())
    }
}
