//! Truncated descriptions of a sector.
//!
//! Row 1 is the chain `|k - s>|s_bar>`, `s = 0..=min(k, N)`, of collective
//! states with amplitudes proportional to `kappa_{i1} ... kappa_{is}`. Inside
//! that chain `H` is tridiagonal with couplings
//! `t_s = sqrt(k - s + 1) N_s / N_{s-1}`.
//!
//! Row 2 adds, for each `s = 1..min(k, N) - 1`, the part of
//! `J_- |(s+1)_bar>` orthogonal to `|s_bar>`, normalized. These are the
//! states through which the inhomogeneous interaction leaks out of row 1.

use std::sync::Arc;

use super::basis::{colex_rank, SectorBasis};
use super::state::StateVector;
use crate::coupling::CouplingProfile;
use crate::eigen::{fix_sign, tridiagonal_eigen, DenseMatrix, EigenPair};
use crate::error::{invalid, Error, Result};
use crate::symmetric::SymTable;

/// Row-2 construction needs the explicit subset basis; keep it small.
pub const ROW2_ATOM_CAP: usize = 24;

/// Relative norm below which a perpendicular component counts as absent.
pub const PERPENDICULAR_CUTOFF: f64 = 1e-10;

/// Row-1 effective Hamiltonian of the `k`-excitation sector.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedTridiagonal {
    pub k: usize,
    pub n_atoms: usize,
    /// `k - N/2`, shared by every row-1 state.
    pub diagonal_constant: f64,
    /// `t_1..t_min(k,N)`.
    pub offdiag: Vec<f64>,
}

impl TruncatedTridiagonal {
    pub fn build(profile: &CouplingProfile, k: usize) -> Result<Self> {
        let n = profile.n_atoms();
        let smax = k.min(n);
        let table = SymTable::from_profile(profile, smax);
        let offdiag = (1..=smax)
            .map(|s| Ok(((k - s + 1) as f64).sqrt() * table.norm_ratio(s)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            k,
            n_atoms: n,
            diagonal_constant: k as f64 - n as f64 / 2.0,
            offdiag,
        })
    }

    pub fn dim(&self) -> usize {
        self.offdiag.len() + 1
    }

    /// All eigenpairs, ascending.
    ///
    /// The coupling part is diagonalized with a zero diagonal and shifted
    /// afterwards, so the eigenvectors do not depend on the overall coupling
    /// scale.
    pub fn eigenpairs(&self) -> Result<Vec<EigenPair>> {
        let zeros = vec![0.0; self.dim()];
        let (vals, vecs) = tridiagonal_eigen(&zeros, &self.offdiag, true)?;
        Ok(vals
            .into_iter()
            .zip(vecs.expect("vectors requested"))
            .map(|(v, mut vector)| {
                fix_sign(&mut vector);
                EigenPair {
                    value: v + self.diagonal_constant,
                    vector,
                }
            })
            .collect())
    }

    /// Lowest-energy row-1 eigenpair; its vector holds the `A_s`.
    pub fn ground(&self) -> Result<EigenPair> {
        Ok(self.eigenpairs()?.swap_remove(0))
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = self.diagonal_constant;
        }
        for (s, &t) in self.offdiag.iter().enumerate() {
            m[(s, s + 1)] = t;
            m[(s + 1, s)] = t;
        }
        m
    }
}

/// Normalized collective amplitudes on the `s`-excitation masks of `basis`,
/// in level order.
pub fn collective_level(profile: &CouplingProfile, basis: &SectorBasis, s: usize) -> Result<Vec<f64>> {
    if s > basis.max_atomic() {
        return invalid(format!(
            "collective level {s} is outside the sector (max {} excited atoms)",
            basis.max_atomic()
        ));
    }
    let kappas = profile.kappas();
    let mut amps: Vec<f64> = basis
        .level_masks(s)
        .iter()
        .map(|&m| {
            let mut prod = 1.0;
            let mut rest = m;
            while rest != 0 {
                prod *= kappas[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            prod
        })
        .collect();
    let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    Ok(amps)
}

fn check_profile(profile: &CouplingProfile, basis: &SectorBasis) -> Result<()> {
    if profile.n_atoms() != basis.n_atoms() {
        return invalid(format!(
            "profile has {} atoms, sector has {}",
            profile.n_atoms(),
            basis.n_atoms()
        ));
    }
    Ok(())
}

/// `|k - s>|s_bar>` as a sector state.
pub fn collective_state(profile: &CouplingProfile, basis: &Arc<SectorBasis>, s: usize) -> Result<StateVector> {
    check_profile(profile, basis)?;
    let amps = collective_level(profile, basis, s)?;
    let mut v = StateVector::zeros(basis.clone());
    v.amplitudes_mut()[basis.level_range(s)].copy_from_slice(&amps);
    Ok(v)
}

/// `sum_s A_s |k - s>|s_bar>` for row-1 coefficients `coeffs`.
pub fn embed_row1(profile: &CouplingProfile, basis: &Arc<SectorBasis>, coeffs: &[f64]) -> Result<StateVector> {
    check_profile(profile, basis)?;
    if coeffs.len() != basis.max_atomic() + 1 {
        return invalid(format!(
            "{} row-1 coefficients for a sector with {} collective levels",
            coeffs.len(),
            basis.max_atomic() + 1
        ));
    }
    let mut v = StateVector::zeros(basis.clone());
    for (s, &a) in coeffs.iter().enumerate() {
        let amps = collective_level(profile, basis, s)?;
        for (dst, x) in v.amplitudes_mut()[basis.level_range(s)].iter_mut().zip(amps) {
            *dst = a * x;
        }
    }
    Ok(v)
}

/// `J_+` from level `s` to level `s + 1` (atomic part only).
pub fn raise_level(profile: &CouplingProfile, basis: &SectorBasis, s: usize, x: &[f64]) -> Vec<f64> {
    let kappas = profile.kappas();
    let mut out = vec![0.0; basis.level_range(s + 1).len()];
    for (&m, &a) in basis.level_masks(s).iter().zip(x) {
        for (i, &kappa) in kappas.iter().enumerate() {
            let bit = 1u64 << i;
            if m & bit == 0 {
                out[colex_rank(m | bit)] += kappa * a;
            }
        }
    }
    out
}

/// `J_-` from level `s` to level `s - 1` (atomic part only).
pub fn lower_level(profile: &CouplingProfile, basis: &SectorBasis, s: usize, x: &[f64]) -> Vec<f64> {
    let kappas = profile.kappas();
    let mut out = vec![0.0; basis.level_range(s - 1).len()];
    for (&m, &a) in basis.level_masks(s).iter().zip(x) {
        let mut rest = m;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out[colex_rank(m ^ (1u64 << i))] += kappas[i] * a;
            rest &= rest - 1;
        }
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A normalized row-2 state living on the `level`-excitation masks.
#[derive(Debug, Clone, PartialEq)]
pub struct PerpendicularState {
    pub level: usize,
    pub amplitudes: Vec<f64>,
}

/// Row-2 states of the sector described by `basis`, ascending in level.
pub fn row2_level_states(profile: &CouplingProfile, basis: &SectorBasis) -> Result<Vec<PerpendicularState>> {
    check_profile(profile, basis)?;
    let smax = basis.max_atomic();
    let mut out = Vec::new();
    for s in 1..smax {
        let upper = collective_level(profile, basis, s + 1)?;
        let here = collective_level(profile, basis, s)?;
        let mut phi = lower_level(profile, basis, s + 1, &upper);
        let phi_norm = dot(&phi, &phi).sqrt();
        for _ in 0..2 {
            let c = dot(&here, &phi);
            phi.iter_mut().zip(&here).for_each(|(p, h)| *p -= c * h);
        }
        let rest = dot(&phi, &phi).sqrt();
        if rest < PERPENDICULAR_CUTOFF * phi_norm {
            continue;
        }
        phi.iter_mut().for_each(|p| *p /= rest);
        out.push(PerpendicularState {
            level: s,
            amplitudes: phi,
        });
    }
    Ok(out)
}

fn check_row2_cap(profile: &CouplingProfile) -> Result<()> {
    if profile.n_atoms() > ROW2_ATOM_CAP {
        return Err(Error::ResourceLimit {
            what: "atoms for the row-2 construction",
            requested: profile.n_atoms(),
            cap: ROW2_ATOM_CAP,
        });
    }
    Ok(())
}

/// Row-2 states `|k - s>|s_p>` embedded in the `k`-excitation sector.
pub fn build_row2_states(profile: &CouplingProfile, k: usize) -> Result<Vec<StateVector>> {
    check_row2_cap(profile)?;
    let basis = SectorBasis::enumerate(profile.n_atoms(), k)?.shared();
    row2_level_states(profile, &basis)?
        .into_iter()
        .map(|p| {
            let mut v = StateVector::zeros(basis.clone());
            v.amplitudes_mut()[basis.level_range(p.level)].copy_from_slice(&p.amplitudes);
            Ok(v)
        })
        .collect()
}

/// `H` projected on row 1 followed by row 2 (row-1 states first, then the
/// row-2 states in ascending level).
pub fn build_row12_hamiltonian(profile: &CouplingProfile, k: usize) -> Result<DenseMatrix> {
    check_row2_cap(profile)?;
    let n = profile.n_atoms();
    let basis = SectorBasis::enumerate(n, k)?;
    let smax = basis.max_atomic();

    let mut states: Vec<(usize, Vec<f64>)> = (0..=smax)
        .map(|s| Ok((s, collective_level(profile, &basis, s)?)))
        .collect::<Result<_>>()?;
    states.extend(
        row2_level_states(profile, &basis)?
            .into_iter()
            .map(|p| (p.level, p.amplitudes)),
    );

    let dim = states.len();
    let mut m = DenseMatrix::zeros(dim);
    let diag = k as f64 - n as f64 / 2.0;
    for a in 0..dim {
        m[(a, a)] = diag;
    }
    // <k-s, u| a J_+ |k-s+1, w> = sqrt(k - s + 1) <u|J_+ w> for w one level down.
    for (b, (sb, wb)) in states.iter().enumerate() {
        if *sb == smax {
            continue;
        }
        let raised = raise_level(profile, &basis, *sb, wb);
        let photon_factor = ((k - sb) as f64).sqrt();
        for (a, (sa, ua)) in states.iter().enumerate() {
            if *sa == sb + 1 {
                let v = photon_factor * dot(ua, &raised);
                m[(a, b)] = v;
                m[(b, a)] = v;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{eig_sym_dense, lowest_eigenpair_dense};
    use crate::sector::hamiltonian::{ground_state, SparseSectorHamiltonian};
    use approx::assert_relative_eq;

    fn norms(profile: &CouplingProfile) -> (f64, f64) {
        let t = SymTable::from_profile(profile, 2);
        (t.norm(1).unwrap(), t.norm(2).unwrap())
    }

    #[test]
    fn one_excitation_row1() {
        let p = CouplingProfile::from_explicit(&[3.0, 4.0]).unwrap();
        let t = TruncatedTridiagonal::build(&p, 1).unwrap();
        assert_eq!(t.offdiag.len(), 1);
        assert_relative_eq!(t.offdiag[0], 5.0, epsilon = 1e-14);
        let e = t.eigenpairs().unwrap();
        assert_relative_eq!(e[0].value, -5.0, epsilon = 1e-14);
        assert_relative_eq!(e[1].value, 5.0, epsilon = 1e-14);
    }

    #[test]
    fn two_excitation_row1_matches_closed_form() {
        let p = CouplingProfile::sine(7, 1.0, 1.0).unwrap();
        let (n1, n2) = norms(&p);
        let t = TruncatedTridiagonal::build(&p, 2).unwrap();
        assert_relative_eq!(t.offdiag[0], 2f64.sqrt() * n1, max_relative = 1e-14);
        assert_relative_eq!(t.offdiag[1], n2 / n1, max_relative = 1e-14);
        let g = t.ground().unwrap();
        let e2 = 2.0 - 3.5 - (2.0 * n1 * n1 + (n2 / n1).powi(2)).sqrt();
        assert_relative_eq!(g.value, e2, max_relative = 1e-13);
        let d = (4.0 * n1.powi(4) + 2.0 * n2 * n2).sqrt();
        let (alpha, beta) = (2f64.sqrt() * n1 * n1 / d, n2 / d);
        for (x, y) in g.vector.iter().zip([alpha, -std::f64::consts::FRAC_1_SQRT_2, beta]) {
            assert_relative_eq!(*x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn collective_states() {
        let p = CouplingProfile::from_explicit(&[3.0, 4.0]).unwrap();
        let b = SectorBasis::enumerate(2, 1).unwrap().shared();
        let v = collective_state(&p, &b, 1).unwrap();
        assert_eq!(v.amplitudes(), &[0.0, 0.6, 0.8]);
        let v0 = collective_state(&p, &b, 0).unwrap();
        assert_eq!(v0.amplitudes(), &[1.0, 0.0, 0.0]);
        assert!(collective_state(&p, &b, 2).is_err());

        let u = CouplingProfile::uniform(3, 2.0).unwrap();
        let b3 = SectorBasis::enumerate(3, 2).unwrap();
        for a in collective_level(&u, &b3, 2).unwrap() {
            assert_relative_eq!(a, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        }
    }

    #[test]
    fn one_excitation_chain_is_closed() {
        let p = CouplingProfile::sine(9, 1.0, 1.0).unwrap();
        let t = TruncatedTridiagonal::build(&p, 1).unwrap();
        let h = SparseSectorHamiltonian::build(&p, 1).unwrap();
        for pair in t.eigenpairs().unwrap() {
            let v = embed_row1(&p, h.basis(), &pair.vector).unwrap();
            let hv = h.apply(&v).unwrap();
            let r = hv.combine(1.0, &v, -pair.value).unwrap().norm();
            assert!(r <= 1e-12, "residual {r}");
        }
    }

    #[test]
    fn row1_action_matches_within_row1() {
        // Projecting H|row-1 state> back onto row 1 reproduces the tridiagonal.
        let p = CouplingProfile::sine(6, 1.0, 1.0).unwrap();
        let k = 3;
        let t = TruncatedTridiagonal::build(&p, k).unwrap();
        let h = SparseSectorHamiltonian::build(&p, k).unwrap();
        let dense = t.to_dense();
        for a in 0..t.dim() {
            let va = collective_state(&p, h.basis(), a).unwrap();
            let hva = h.apply(&va).unwrap();
            for b in 0..t.dim() {
                let vb = collective_state(&p, h.basis(), b).unwrap();
                assert!((vb.dot(&hva).unwrap() - dense[(b, a)]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn raising_ladder_builds_collective_states() {
        for n in [3, 7, 12] {
            let p = CouplingProfile::sine(n, 1.0, 1.0).unwrap();
            for top in 1..=4usize.min(n) {
                let b = SectorBasis::enumerate(n, top).unwrap();
                let mut x = vec![1.0];
                for s in 0..top {
                    x = raise_level(&p, &b, s, &x);
                }
                let want = collective_level(&p, &b, top).unwrap();
                let cos = dot(&x, &want) / dot(&x, &x).sqrt();
                assert!(cos >= 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn row2_two_atoms() {
        let p = CouplingProfile::from_explicit(&[1.0, 2.0]).unwrap();
        let states = build_row2_states(&p, 2).unwrap();
        assert_eq!(states.len(), 1);
        let b = states[0].basis().clone();
        let bar = collective_state(&p, &b, 1).unwrap();
        assert!(states[0].dot(&bar).unwrap().abs() <= 1e-12);
        assert_relative_eq!(states[0].norm(), 1.0, epsilon = 1e-14);
        // Phi_1 ~ kappa_i * sum_{j != i} kappa_j^2: (1 * 4, 2 * 1) = (4, 2),
        // minus its projection on (1, 2)/sqrt 5 leaves (2, -1)/sqrt 5 up to sign.
        let amps = &states[0].amplitudes()[b.level_range(1)];
        assert_relative_eq!(amps[0].abs(), 2.0 / 5f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(amps[1].abs(), 1.0 / 5f64.sqrt(), epsilon = 1e-12);
        assert!(amps[0] * amps[1] < 0.0);
    }

    #[test]
    fn row2_states_are_orthogonal_to_row1() {
        let p = CouplingProfile::sine(8, 1.0, 1.0).unwrap();
        let states = build_row2_states(&p, 4).unwrap();
        assert_eq!(states.len(), 3);
        let b = states[0].basis().clone();
        for v in &states {
            assert_relative_eq!(v.norm(), 1.0, epsilon = 1e-12);
            for s in 0..=4 {
                let c = collective_state(&p, &b, s).unwrap();
                assert!(v.dot(&c).unwrap().abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn homogeneous_row2_is_empty() {
        for (n, k) in [(4, 3), (9, 5), (6, 6)] {
            let p = CouplingProfile::uniform(n, 1.3).unwrap();
            assert!(build_row2_states(&p, k).unwrap().is_empty());
        }
        assert!(build_row2_states(&CouplingProfile::sine(5, 1.0, 1.0).unwrap(), 1).unwrap().is_empty());
    }

    #[test]
    fn row12_reduces_to_row1_without_row2() {
        let p = CouplingProfile::sine(5, 1.0, 1.0).unwrap();
        let m = build_row12_hamiltonian(&p, 1).unwrap();
        let t = TruncatedTridiagonal::build(&p, 1).unwrap().to_dense();
        assert_eq!(m.dim(), t.dim());
        for r in 0..m.dim() {
            for (x, y) in m.row(r).iter().zip(t.row(r)) {
                assert_relative_eq!(x, y, epsilon = 1e-14);
            }
        }

        let u = CouplingProfile::uniform(6, 0.9).unwrap();
        let m = build_row12_hamiltonian(&u, 4).unwrap();
        let a: Vec<f64> = eig_sym_dense(&m).unwrap().iter().map(|e| e.value).collect();
        let b: Vec<f64> = TruncatedTridiagonal::build(&u, 4).unwrap().eigenpairs().unwrap().iter().map(|e| e.value).collect();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_relative_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn ground_energies_are_variationally_ordered() {
        for (n, k) in [(6, 2), (8, 3), (10, 4), (7, 6)] {
            let p = CouplingProfile::sine(n, 1.0, 1.0).unwrap();
            let e1 = TruncatedTridiagonal::build(&p, k).unwrap().ground().unwrap().value;
            let e12 = lowest_eigenpair_dense(&build_row12_hamiltonian(&p, k).unwrap()).unwrap().value;
            let ex = ground_state(&SparseSectorHamiltonian::build(&p, k).unwrap()).unwrap().value;
            assert!(ex <= e12 + 1e-10 && e12 <= e1 + 1e-10, "{ex} {e12} {e1}");
        }
    }

    #[test]
    fn row2_cap() {
        let p = CouplingProfile::sine(25, 1.0, 1.0).unwrap();
        assert!(matches!(build_row12_hamiltonian(&p, 2), Err(Error::ResourceLimit { .. })));
    }
}
