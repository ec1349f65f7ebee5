use std::sync::Arc;

use super::basis::{BasisState, SectorBasis};
use crate::error::{invalid, Result};

/// Real amplitudes over a sector basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Arc<SectorBasis>,
    amplitudes: Vec<f64>,
}

impl StateVector {
    pub fn new(basis: Arc<SectorBasis>, amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return invalid(format!(
                "{} amplitudes for a sector of dimension {}",
                amplitudes.len(),
                basis.dim()
            ));
        }
        Ok(Self { basis, amplitudes })
    }

    pub fn zeros(basis: Arc<SectorBasis>) -> Self {
        let amplitudes = vec![0.0; basis.dim()];
        Self { basis, amplitudes }
    }

    /// The single basis ket `state`.
    pub fn basis_ket(basis: Arc<SectorBasis>, state: BasisState) -> Result<Self> {
        let Some(idx) = basis.index_of(state) else {
            return invalid(format!("{state:?} is not in the sector"));
        };
        let mut v = Self::zeros(basis);
        v.amplitudes[idx] = 1.0;
        Ok(v)
    }

    pub fn basis(&self) -> &Arc<SectorBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [f64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<f64> {
        self.amplitudes
    }

    pub fn amplitude(&self, state: BasisState) -> f64 {
        self.basis.index_of(state).map_or(0.0, |i| self.amplitudes[i])
    }

    pub fn same_sector(&self, other: &SectorBasis) -> bool {
        self.basis.n_atoms() == other.n_atoms() && self.basis.k() == other.k()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm().powi(2) - 1.0).abs() <= tol
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return invalid("cannot normalize the zero vector");
        }
        self.amplitudes.iter_mut().for_each(|a| *a /= n);
        Ok(self)
    }

    pub fn dot(&self, other: &StateVector) -> Result<f64> {
        if !other.same_sector(&self.basis) {
            return invalid("inner product across different sectors");
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a * b).sum())
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &StateVector, b: f64) -> Result<StateVector> {
        if !other.same_sector(&self.basis) {
            return invalid("linear combination across different sectors");
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self {
            basis: self.basis.clone(),
            amplitudes,
        })
    }
}
