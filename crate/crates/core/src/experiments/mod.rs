//! Parameter sweeps behind the figures: spectra, the row-2 energy shift and
//! pair concurrence, plus the qualitative checks run by `--verify`.

mod verify;

use rayon::prelude::*;

use crate::coupling::CouplingProfile;
use crate::entanglement::{concurrence_analytic_general, concurrence_row1_oracle, concurrence_sector_oracle};
use crate::error::{invalid, Result};
use crate::sector::{
    build_row12_hamiltonian, ground_state, sector_dimension, SparseSectorHamiltonian, TruncatedTridiagonal,
    DEFAULT_SECTOR_CAP, MAX_MASK_ATOMS, ROW2_ATOM_CAP,
};
use crate::symmetric::SymTable;

pub use verify::{verify_conc, verify_delta_e, verify_spectrum, Check};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Spectrum,
    DeltaE,
    ConcProfile,
    ConcFirstLast,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Self::Spectrum => "spectrum",
            Self::DeltaE => "delta_e",
            Self::ConcProfile => "conc_profile",
            Self::ConcFirstLast => "conc_first_last",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    Sine,
    Uniform,
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSpec {
    pub kind: ProfileKind,
    pub kappa: f64,
    pub length: f64,
}

impl Default for ProfileSpec {
    fn default() -> Self {
        Self {
            kind: ProfileKind::Sine,
            kappa: 1.0,
            length: 1.0,
        }
    }
}

impl ProfileSpec {
    pub fn build(&self, n_atoms: usize) -> Result<CouplingProfile> {
        match &self.kind {
            ProfileKind::Sine => CouplingProfile::sine(n_atoms, self.length, self.kappa),
            ProfileKind::Uniform => CouplingProfile::uniform(n_atoms, self.kappa),
            ProfileKind::Explicit(kappas) if kappas.len() == n_atoms => CouplingProfile::from_explicit(kappas),
            ProfileKind::Explicit(kappas) => invalid(format!(
                "explicit profile has {} couplings but n_atoms = {n_atoms}",
                kappas.len()
            )),
        }
    }
}

/// Which atom pairs a concurrence sweep reports. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSpec {
    Fixed(usize, usize),
    FirstVsAll,
    FirstVsLast,
}

impl PairSpec {
    pub fn pairs(self, n_atoms: usize) -> Result<Vec<(usize, usize)>> {
        match self {
            Self::Fixed(i, j) if i != j && i < n_atoms && j < n_atoms => Ok(vec![(i, j)]),
            Self::Fixed(i, j) => invalid(format!("pair ({i}, {j}) invalid for {n_atoms} atoms")),
            _ if n_atoms < 2 => invalid("concurrence needs at least two atoms"),
            Self::FirstVsAll => Ok((1..n_atoms).map(|j| (0, j)).collect()),
            Self::FirstVsLast => Ok(vec![(0, n_atoms - 1)]),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub profile: ProfileSpec,
    pub n_atoms: Vec<usize>,
    pub ks: Vec<usize>,
    pub pair: PairSpec,
    /// Largest exact sector diagonalized for the oracle columns.
    pub sector_cap: usize,
}

impl SweepConfig {
    pub fn defaults(experiment: Experiment) -> Self {
        let (n_atoms, pair): (Vec<usize>, _) = match experiment {
            Experiment::Spectrum => ((2..=12).collect(), PairSpec::FirstVsLast),
            Experiment::DeltaE => ((4..=20).collect(), PairSpec::FirstVsLast),
            Experiment::ConcProfile => (vec![10, 20, 30], PairSpec::FirstVsAll),
            Experiment::ConcFirstLast => ((4..=40).collect(), PairSpec::FirstVsLast),
        };
        let ks = match experiment {
            Experiment::Spectrum => (0..=6).collect(),
            _ => (1..=6).collect(),
        };
        Self {
            profile: ProfileSpec::default(),
            n_atoms,
            ks,
            pair,
            sector_cap: DEFAULT_SECTOR_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_atoms.is_empty() || self.ks.is_empty() {
            return invalid("n_atoms and k lists must be nonempty");
        }
        if self.n_atoms.contains(&0) {
            return invalid("n_atoms entries must be positive");
        }
        Ok(())
    }

    fn cells(&self) -> Vec<(usize, usize)> {
        let mut ns = self.n_atoms.clone();
        ns.sort_unstable();
        ns.dedup();
        let mut ks = self.ks.clone();
        ks.sort_unstable();
        ks.dedup();
        ns.iter().flat_map(|&n| ks.iter().map(move |&k| (n, k))).collect()
    }
}

fn fits(n: usize, k: usize, cap: usize) -> bool {
    n <= MAX_MASK_ATOMS && sector_dimension(n, k) <= cap as u64
}

fn exact_ground(profile: &CouplingProfile, k: usize, cap: usize) -> Result<Option<crate::sector::SectorEigenPair>> {
    if !fits(profile.n_atoms(), k, cap) {
        return Ok(None);
    }
    let h = SparseSectorHamiltonian::build_with_cap(profile, k, cap)?;
    ground_state(&h).map(Some)
}

fn row12_ground(profile: &CouplingProfile, k: usize) -> Result<Option<f64>> {
    if profile.n_atoms() > ROW2_ATOM_CAP {
        return Ok(None);
    }
    let m = build_row12_hamiltonian(profile, k)?;
    Ok(Some(crate::eigen::lowest_eigenpair_dense(&m)?.value))
}

/// Closed-form ground energy for `k <= 2`.
pub fn analytic_energy(profile: &CouplingProfile, k: usize) -> Result<Option<f64>> {
    let n = profile.n_atoms() as f64;
    let e = SymTable::from_profile(profile, 2);
    Ok(match k {
        0 => Some(-n / 2.0),
        1 => Some(1.0 - n / 2.0 - e.norm(1)?),
        2 if profile.n_atoms() >= 2 => {
            let (n1, n2) = (e.norm(1)?, e.norm(2)?);
            Some(2.0 - n / 2.0 - (2.0 * n1 * n1 + (n2 / n1).powi(2)).sqrt())
        }
        _ => None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub n_atoms: usize,
    pub k: usize,
    pub e_row1: f64,
    pub e_row12: Option<f64>,
    pub e_exact: Option<f64>,
    pub e_analytic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaERow {
    pub n_atoms: usize,
    pub k: usize,
    pub e_row1: f64,
    pub e_row12: f64,
    /// `100 |E_row1 - E_row12| / |E_row1|`.
    pub delta_e: f64,
    pub e_exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcRow {
    pub n_atoms: usize,
    pub k: usize,
    /// 0-based atom indices.
    pub i: usize,
    pub j: usize,
    /// General closed form on the row-1 ground state, clamped.
    pub analytic: f64,
    /// Same, before clamping.
    pub raw: f64,
    /// Wootters value of the row-1 mixture.
    pub row1_oracle: f64,
    /// Wootters value of the exact sector ground state, when it fits the cap.
    pub exact_oracle: Option<f64>,
}

fn collect_sorted<T: Send, F>(cells: Vec<(usize, usize)>, f: F) -> Result<Vec<T>>
where
    F: Fn(usize, usize) -> Result<Vec<T>> + Sync,
{
    let parts: Vec<Result<Vec<T>>> = cells.into_par_iter().map(|(n, k)| f(n, k)).collect();
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

pub fn run_spectrum(config: &SweepConfig) -> Result<Vec<SpectrumRow>> {
    config.validate()?;
    collect_sorted(config.cells(), |n, k| {
        let profile = config.profile.build(n)?;
        let e_row1 = TruncatedTridiagonal::build(&profile, k)?.ground()?.value;
        Ok(vec![SpectrumRow {
            n_atoms: n,
            k,
            e_row1,
            e_row12: row12_ground(&profile, k)?,
            e_exact: exact_ground(&profile, k, config.sector_cap)?.map(|g| g.value),
            e_analytic: analytic_energy(&profile, k)?,
        }])
    })
}

pub fn run_delta_e(config: &SweepConfig) -> Result<Vec<DeltaERow>> {
    config.validate()?;
    if let Some(&n) = config.n_atoms.iter().find(|&&n| n > ROW2_ATOM_CAP) {
        return invalid(format!("row-2 construction is limited to {ROW2_ATOM_CAP} atoms, got {n}"));
    }
    collect_sorted(config.cells(), |n, k| {
        let profile = config.profile.build(n)?;
        let e_row1 = TruncatedTridiagonal::build(&profile, k)?.ground()?.value;
        let e_row12 = row12_ground(&profile, k)?.expect("within row-2 cap");
        Ok(vec![DeltaERow {
            n_atoms: n,
            k,
            e_row1,
            e_row12,
            delta_e: 100.0 * ((e_row1 - e_row12) / e_row1).abs(),
            e_exact: exact_ground(&profile, k, config.sector_cap)?.map(|g| g.value),
        }])
    })
}

/// Pair concurrence over the grid; rows ordered by `(N, k, i, j)`.
pub fn run_concurrence(config: &SweepConfig) -> Result<Vec<ConcRow>> {
    config.validate()?;
    for &n in &config.n_atoms {
        config.pair.pairs(n)?;
    }
    collect_sorted(config.cells(), |n, k| {
        let profile = config.profile.build(n)?;
        let a = TruncatedTridiagonal::build(&profile, k)?.ground()?.vector;
        let exact = exact_ground(&profile, k, config.sector_cap)?;
        let mut rows = Vec::new();
        for (i, j) in config.pair.pairs(n)? {
            let analytic = concurrence_analytic_general(&profile, &a, i, j, k)?;
            let row1_oracle = concurrence_row1_oracle(&profile, &a, i, j, k)?.value;
            let exact_oracle = match &exact {
                Some(g) => Some(concurrence_sector_oracle(&g.state, i, j)?.value),
                None => None,
            };
            rows.push(ConcRow {
                n_atoms: n,
                k,
                i,
                j,
                analytic: analytic.value,
                raw: analytic.raw,
                row1_oracle,
                exact_oracle,
            });
        }
        Ok(rows)
    })
}

pub fn run_conc_profile(config: &SweepConfig) -> Result<Vec<ConcRow>> {
    run_concurrence(config)
}

pub fn run_conc_first_last(config: &SweepConfig) -> Result<Vec<ConcRow>> {
    run_concurrence(&SweepConfig {
        pair: PairSpec::FirstVsLast,
        ..config.clone()
    })
}
