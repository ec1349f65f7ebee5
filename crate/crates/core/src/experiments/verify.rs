//! Assertions behind `--verify`. A check is only emitted when the sweep
//! contains the rows it talks about.

use std::collections::BTreeMap;

use super::{ConcRow, DeltaERow, Experiment, SpectrumRow, SweepConfig};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_failures(name: &str, checked: usize, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{checked} values checked")
        } else {
            let shown: Vec<_> = failures.iter().take(5).cloned().collect();
            format!("{} of {checked} failed: {}", failures.len(), shown.join("; "))
        };
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

struct Collector(Vec<Check>);

impl Collector {
    fn push(&mut self, name: &str, checked: usize, failures: Vec<String>) {
        if checked > 0 {
            self.0.push(Check::from_failures(name, checked, failures));
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

pub fn verify_spectrum(rows: &[SpectrumRow]) -> Vec<Check> {
    let mut out = Collector(Vec::new());

    let vacuum: Vec<_> = rows.iter().filter(|r| r.k == 0).collect();
    let fails = vacuum
        .iter()
        .filter(|r| {
            let want = -(r.n_atoms as f64) / 2.0;
            [Some(r.e_row1), r.e_row12, r.e_exact].into_iter().flatten().any(|e| (e - want).abs() > 1e-12)
        })
        .map(|r| format!("N={}", r.n_atoms))
        .collect();
    out.push("vacuum energy is -N/2", vacuum.len(), fails);

    let closed: Vec<_> = rows.iter().filter(|r| r.e_analytic.is_some()).collect();
    let fails = closed
        .iter()
        .filter(|r| rel(r.e_row1, r.e_analytic.unwrap()) > 1e-12)
        .map(|r| format!("N={} k={}", r.n_atoms, r.k))
        .collect();
    out.push("row-1 ground matches closed-form energy", closed.len(), fails);

    let one: Vec<_> = rows.iter().filter(|r| r.k == 1 && r.e_exact.is_some()).collect();
    let fails = one
        .iter()
        .filter(|r| rel(r.e_exact.unwrap(), r.e_row1) > 1e-10)
        .map(|r| format!("N={}", r.n_atoms))
        .collect();
    out.push("exact one-excitation ground matches closed form", one.len(), fails);

    let exact: Vec<_> = rows.iter().filter(|r| r.e_exact.is_some()).collect();
    let fails = exact
        .iter()
        .filter(|r| {
            let tol = 1e-10 * r.e_row1.abs().max(1.0);
            let e = r.e_exact.unwrap();
            let upper = r.e_row12.unwrap_or(r.e_row1);
            e > upper + tol || upper > r.e_row1 + tol
        })
        .map(|r| format!("N={} k={}", r.n_atoms, r.k))
        .collect();
    out.push("variational ordering exact <= row-1+2 <= row-1", exact.len(), fails);
    out.0
}

/// Atom and excitation window of the row-2 energy-shift claims.
pub const DELTA_E_ATOMS: std::ops::RangeInclusive<usize> = 8..=20;
pub const DELTA_E_EXCITATIONS: std::ops::RangeInclusive<usize> = 2..=6;

pub fn verify_delta_e(rows: &[DeltaERow]) -> Vec<Check> {
    let mut out = Collector(Vec::new());

    let one: Vec<_> = rows.iter().filter(|r| r.k == 1).collect();
    let fails = one
        .iter()
        .filter(|r| r.delta_e > 1e-10)
        .map(|r| format!("N={} dE={:.3e}", r.n_atoms, r.delta_e))
        .collect();
    out.push("no row-2 shift at one excitation", one.len(), fails);

    let window: Vec<_> = rows
        .iter()
        .filter(|r| DELTA_E_ATOMS.contains(&r.n_atoms) && DELTA_E_EXCITATIONS.contains(&r.k))
        .collect();
    let fails = window
        .iter()
        .filter(|r| r.delta_e >= 1.0)
        .map(|r| format!("N={} k={} dE={:.4}%", r.n_atoms, r.k, r.delta_e))
        .collect();
    out.push("row-2 shift below 1% for N in 8..20, k in 2..6", window.len(), fails);

    let mut by_k: BTreeMap<usize, Vec<&DeltaERow>> = BTreeMap::new();
    for r in &window {
        by_k.entry(r.k).or_default().push(r);
    }
    let mut checked = 0;
    let mut fails = Vec::new();
    for (k, series) in &by_k {
        for w in series.windows(2) {
            checked += 1;
            if w[1].delta_e > w[0].delta_e + 1e-12 {
                fails.push(format!("k={k}: N={} -> N={}", w[0].n_atoms, w[1].n_atoms));
            }
        }
    }
    out.push("row-2 shift nonincreasing in N", checked, fails);

    let exact: Vec<_> = rows.iter().filter(|r| r.e_exact.is_some()).collect();
    let fails = exact
        .iter()
        .filter(|r| {
            let e = r.e_exact.unwrap();
            100.0 * ((r.e_row12 - e) / e).abs() >= 1.0
        })
        .map(|r| format!("N={} k={}", r.n_atoms, r.k))
        .collect();
    out.push("row-1+2 ground within 1% of exact", exact.len(), fails);
    out.0
}

/// Concurrence values keyed by `(N, k)`, then 1-based partner index `j`.
fn grouped(rows: &[ConcRow]) -> BTreeMap<(usize, usize), Vec<&ConcRow>> {
    let mut map: BTreeMap<(usize, usize), Vec<&ConcRow>> = BTreeMap::new();
    for r in rows {
        map.entry((r.n_atoms, r.k)).or_default().push(r);
    }
    map
}

fn first_vs_all_complete(n: usize, group: &[&ConcRow]) -> bool {
    group.len() == n - 1 && group.iter().enumerate().all(|(t, r)| r.i == 0 && r.j == t + 1)
}

pub fn verify_conc(config: &SweepConfig, rows: &[ConcRow], experiment: Experiment) -> Result<Vec<Check>> {
    let mut out = Collector(Vec::new());

    let fails = rows
        .iter()
        .filter(|r| !(0.0..=1.0).contains(&r.analytic) || (r.analytic - r.row1_oracle).abs() > 1e-9)
        .map(|r| format!("N={} k={} j={}", r.n_atoms, r.k, r.j + 1))
        .collect();
    out.push("closed form matches row-1 Wootters value", rows.len(), fails);

    let one: Vec<_> = rows.iter().filter(|r| r.k == 1 && r.exact_oracle.is_some()).collect();
    let fails = one
        .iter()
        .filter(|r| (r.analytic - r.exact_oracle.unwrap()).abs() > 1e-10)
        .map(|r| format!("N={} j={}", r.n_atoms, r.j + 1))
        .collect();
    out.push("one excitation matches exact Wootters value", one.len(), fails);

    let two: Vec<_> = rows
        .iter()
        .filter(|r| r.k == 2 && r.n_atoms >= 10 && r.exact_oracle.is_some())
        .collect();
    let fails = two
        .iter()
        .filter(|r| (r.analytic - r.exact_oracle.unwrap()).abs() > 2e-2)
        .map(|r| format!("N={} j={}", r.n_atoms, r.j + 1))
        .collect();
    out.push("two excitations within 2e-2 of exact Wootters value (N >= 10)", two.len(), fails);

    let groups = grouped(rows);
    match experiment {
        Experiment::ConcProfile => verify_profile(&groups, &mut out),
        Experiment::ConcFirstLast => verify_first_last(config, &groups, &mut out)?,
        _ => {}
    }
    Ok(out.0)
}

fn verify_profile(groups: &BTreeMap<(usize, usize), Vec<&ConcRow>>, out: &mut Collector) {
    let full: Vec<_> = groups
        .iter()
        .filter(|((n, _), g)| *n >= 3 && first_vs_all_complete(*n, g))
        .collect();

    // The partner of atom 1 with the strongest coupling sits at the centre.
    let mut fails = Vec::new();
    for ((n, k), g) in &full {
        let centre = [(n + 1) / 2, (n + 2) / 2];
        let peak = g.iter().map(|r| r.analytic).fold(f64::NEG_INFINITY, f64::max);
        let at_centre = g
            .iter()
            .filter(|r| centre.contains(&(r.j + 1)))
            .map(|r| r.analytic)
            .fold(f64::NEG_INFINITY, f64::max);
        if at_centre < peak || peak <= 0.0 {
            fails.push(format!("N={n} k={k}"));
        }
    }
    out.push("profile peaks at the centre atom(s)", full.len(), fails);

    let mut checked = 0;
    let mut fails = Vec::new();
    for ((n, k), g) in full.iter().filter(|((_, k), _)| *k == 1) {
        for r in g.iter().filter(|r| r.j + 1 <= n - 1) {
            let mirror = g[n - 1 - r.j - 1];
            checked += 1;
            if (r.analytic - mirror.analytic).abs() > 1e-14 * r.analytic.abs().max(1e-300) {
                fails.push(format!("N={n} k={k} j={}", r.j + 1));
            }
        }
    }
    out.push("one-excitation profile symmetric under j -> N+1-j", checked, fails);

    let mut peaks: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
    for ((n, k), g) in &full {
        let peak = g.iter().map(|r| r.analytic).fold(f64::NEG_INFINITY, f64::max);
        peaks.entry(*k).or_default().push((*n, peak));
    }
    let mut checked = 0;
    let mut fails = Vec::new();
    for (k, series) in &peaks {
        for w in series.windows(2) {
            checked += 1;
            if w[1].1 >= w[0].1 {
                fails.push(format!("k={k}: N={} -> N={}", w[0].0, w[1].0));
            }
        }
    }
    out.push("profile peak decreases with N", checked, fails);

    let mut checked = 0;
    let mut fails = Vec::new();
    let at20: Vec<_> = full.iter().filter(|((n, _), _)| *n == 20).collect();
    for w in at20.windows(2) {
        let ((_, k0), g0) = w[0];
        let ((_, k1), g1) = w[1];
        for (a, b) in g0.iter().zip(g1.iter()) {
            checked += 1;
            if b.analytic > a.analytic {
                fails.push(format!("j={}: k={k0} -> k={k1}", a.j + 1));
            }
        }
    }
    out.push("N = 20 profile nonincreasing in k", checked, fails);
}

fn verify_first_last(
    config: &SweepConfig,
    groups: &BTreeMap<(usize, usize), Vec<&ConcRow>>,
    out: &mut Collector,
) -> Result<()> {
    let mut series: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
    for ((n, k), g) in groups {
        if let Some(r) = g.iter().find(|r| r.i == 0 && r.j + 1 == *n) {
            series.entry(*n).or_default().push((*k, r.analytic));
        }
    }

    if let Some(s) = series.get(&10) {
        let fails = s
            .windows(2)
            .filter(|w| w[1].1 >= w[0].1)
            .map(|w| format!("k={} -> k={}", w[0].0, w[1].0))
            .collect();
        out.push("N = 10 first-last concurrence decreasing in k", s.len().saturating_sub(1), fails);
    }

    let spread = |s: &Vec<(usize, f64)>| {
        let max = s.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        let min = s.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        max - min
    };
    if let (Some(a), Some(b)) = (series.get(&10), series.get(&40)) {
        let fails = if spread(b) < spread(a) {
            Vec::new()
        } else {
            vec![format!("spread N=40 {:.3e} vs N=10 {:.3e}", spread(b), spread(a))]
        };
        out.push("spread over k smaller at N = 40 than at N = 10", 1, fails);
    }

    let mut checked = 0;
    let mut fails = Vec::new();
    for (n, s) in &series {
        if let Some(&(_, c)) = s.iter().find(|x| x.0 == 1) {
            let p = config.profile.build(*n)?;
            let total: f64 = p.kappa_squares().iter().sum();
            let want = p.kappa(0) * p.kappa(n - 1) / total;
            checked += 1;
            if (c - want).abs() > 1e-14 * want {
                fails.push(format!("N={n}"));
            }
        }
    }
    out.push("one-excitation first-last equals closed form", checked, fails);
    Ok(())
}
