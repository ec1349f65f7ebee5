//! Atom placement and inhomogeneous atom-field couplings.
//!
//! Couplings are dimensionless, `kappa_j = g_j / w`. Atoms sit at
//! `x_j = j L / (N + 1)` for `j = 1..=N`, so both cavity mirrors are
//! excluded and every atom has a nonzero coupling under the sine mode.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Positions and coupling constants of the atoms in the cavity.
///
/// Immutable after construction. Atom indices are 0-based throughout the
/// crate.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingProfile {
    positions: Vec<f64>,
    length: f64,
    kappas: Vec<f64>,
}

fn equally_spaced(n_atoms: usize, length: f64) -> Vec<f64> {
    let step = length / (n_atoms as f64 + 1.0);
    (1..=n_atoms).map(|j| j as f64 * step).collect()
}

fn check_count(n_atoms: usize) -> Result<()> {
    if n_atoms == 0 {
        return invalid("profile needs at least one atom");
    }
    Ok(())
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return invalid(format!("{name} must be positive and finite, got {value}"));
    }
    Ok(())
}

impl CouplingProfile {
    /// Sine mode profile `kappa_j = amplitude * sin(pi x_j / L)`.
    pub fn sine(n_atoms: usize, length: f64, amplitude: f64) -> Result<Self> {
        check_count(n_atoms)?;
        check_positive("cavity length", length)?;
        check_positive("coupling amplitude", amplitude)?;
        let denom = n_atoms as f64 + 1.0;
        // Evaluate on the mirror-image index so that kappa_j == kappa_{N+1-j}
        // holds bit for bit.
        let kappas = (1..=n_atoms)
            .map(|j| {
                let m = j.min(n_atoms + 1 - j);
                amplitude * (PI * m as f64 / denom).sin()
            })
            .collect();
        Ok(Self {
            positions: equally_spaced(n_atoms, length),
            length,
            kappas,
        })
    }

    /// Homogeneous limit: every atom couples with `amplitude`.
    pub fn uniform(n_atoms: usize, amplitude: f64) -> Result<Self> {
        check_count(n_atoms)?;
        check_positive("coupling amplitude", amplitude)?;
        Ok(Self {
            positions: equally_spaced(n_atoms, 1.0),
            length: 1.0,
            kappas: vec![amplitude; n_atoms],
        })
    }

    /// Profile with the given couplings; positions are synthesized on a unit
    /// cavity.
    pub fn from_explicit(kappas: &[f64]) -> Result<Self> {
        check_count(kappas.len())?;
        for &k in kappas {
            check_positive("coupling", k)?;
        }
        Ok(Self {
            positions: equally_spaced(kappas.len(), 1.0),
            length: 1.0,
            kappas: kappas.to_vec(),
        })
    }

    /// Same positions, every coupling multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        check_positive("scale factor", factor)?;
        Ok(Self {
            positions: self.positions.clone(),
            length: self.length,
            kappas: self.kappas.iter().map(|k| k * factor).collect(),
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.kappas.len()
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    pub fn kappa(&self, atom: usize) -> f64 {
        self.kappas[atom]
    }

    /// The squared couplings, the variables of every symmetric sum in the
    /// model.
    pub fn kappa_squares(&self) -> Vec<f64> {
        self.kappas.iter().map(|k| k * k).collect()
    }

    /// Squared couplings with atoms `i` and `j` removed.
    pub fn kappa_squares_excluding(&self, i: usize, j: usize) -> Result<Vec<f64>> {
        self.check_pair(i, j)?;
        Ok(self
            .kappas
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != i && m != j)
            .map(|(_, k)| k * k)
            .collect())
    }

    pub(crate) fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.n_atoms();
        if i >= n || j >= n {
            return invalid(format!("atom pair ({i}, {j}) out of range for {n} atoms"));
        }
        if i == j {
            return invalid(format!("atom pair needs two distinct atoms, got ({i}, {i})"));
        }
        Ok(())
    }
}
