//! Randomized invariants across the public API.

use itc_core::eigen::lowest_eigenpair_dense;
use itc_core::entanglement::{
    concurrence_analytic_general, concurrence_row1_oracle, reduce_pair_from_row1_mixture,
    reduce_pair_from_sector_state, wootters_concurrence, TwoQubitDensity,
};
use itc_core::sector::{build_row12_hamiltonian, ground_state, SectorBasis, StateVector, TruncatedTridiagonal};
use itc_core::{CouplingProfile, SparseSectorHamiltonian, SymTable};
use proptest::prelude::*;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(n)
    }
}

fn kappas(max_atoms: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1f64..2.0, 2..=max_atoms)
}

fn normalized(raw: &[f64]) -> Vec<f64> {
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    raw.iter().map(|x| x / norm).collect()
}

/// A profile, an excitation number and a normalized row-1 coefficient vector.
fn row1_case() -> impl Strategy<Value = (Vec<f64>, usize, Vec<f64>)> {
    (kappas(9), 1usize..8).prop_flat_map(|(k, exc)| {
        let len = exc.min(k.len()) + 1;
        let coeffs = prop::collection::vec(-1.0f64..1.0, len)
            .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3);
        (Just(k), Just(exc), coeffs)
    })
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn newton_identities(values in prop::collection::vec(0.0f64..3.0, 0..12)) {
        let n = values.len();
        let table = SymTable::new(&values, n).unwrap();
        let e = table.elems();
        let power = |q: i32| values.iter().map(|v| v.powi(q)).sum::<f64>();
        for p in 1..=n {
            let rhs: f64 = (1..=p)
                .map(|q| if q % 2 == 1 { 1.0 } else { -1.0 } * e[p - q] * power(q as i32))
                .sum();
            let scale = (1..=p).map(|q| e[p - q] * power(q as i32)).sum::<f64>().max(1e-300);
            prop_assert!((p as f64 * e[p] - rhs).abs() <= 1e-11 * scale, "p = {p}");
        }
    }

    #[test]
    fn elementary_sums_scale_homogeneously(values in prop::collection::vec(0.0f64..3.0, 1..10), c in 0.2f64..5.0) {
        let n = values.len();
        let scaled: Vec<f64> = values.iter().map(|v| c * v).collect();
        let a = SymTable::new(&values, n).unwrap();
        let b = SymTable::new(&scaled, n).unwrap();
        for p in 0..=n {
            let expected = c.powi(p as i32) * a.elems()[p];
            prop_assert!((b.elems()[p] - expected).abs() <= 1e-12 * expected.abs().max(1e-300));
        }
    }

    #[test]
    fn general_formula_matches_oracle((k, exc, raw) in row1_case(), seed in any::<prop::sample::Index>()) {
        let profile = CouplingProfile::from_explicit(&k).unwrap();
        let a = normalized(&raw);
        let n = k.len();
        let i = seed.index(n);
        let j = (i + 1 + seed.index(n - 1)) % n;
        let analytic = concurrence_analytic_general(&profile, &a, i, j, exc).unwrap();
        let oracle = concurrence_row1_oracle(&profile, &a, i, j, exc).unwrap();
        prop_assert!((analytic.value - oracle.value).abs() <= 1e-9, "{} vs {}", analytic.value, oracle.value);
    }

    #[test]
    fn concurrence_is_scale_invariant_and_pair_symmetric((k, exc, raw) in row1_case(), c in 0.1f64..10.0) {
        let profile = CouplingProfile::from_explicit(&k).unwrap();
        let scaled = profile.scaled(c).unwrap();
        let a = normalized(&raw);
        let j = k.len() - 1;
        let base = concurrence_analytic_general(&profile, &a, 0, j, exc).unwrap();
        let swapped = concurrence_analytic_general(&profile, &a, j, 0, exc).unwrap();
        let rescaled = concurrence_analytic_general(&scaled, &a, 0, j, exc).unwrap();
        prop_assert_eq!(base.raw, swapped.raw);
        prop_assert!((base.raw - rescaled.raw).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&base.value));
    }

    #[test]
    fn row1_reduction_is_a_state((k, _exc, raw) in row1_case(), seed in any::<prop::sample::Index>()) {
        let profile = CouplingProfile::from_explicit(&k).unwrap();
        let n = k.len();
        let i = seed.index(n - 1);
        let rho = reduce_pair_from_row1_mixture(&normalized(&raw), &profile, i, n - 1).unwrap();
        prop_assert!(rho.validate().is_ok());
    }

    #[test]
    fn wootters_stays_in_unit_interval(
        states in prop::collection::vec((prop::array::uniform4(-1.0f64..1.0), 0.01f64..1.0), 1..5)
            .prop_filter("nonzero", |s| s.iter().all(|(a, _)| a.iter().any(|x| x.abs() > 1e-3))),
    ) {
        let total: f64 = states.iter().map(|(_, w)| w).sum();
        let mut m = [[0.0; 4]; 4];
        for (amps, w) in &states {
            let a = normalized(amps);
            let pure = TwoQubitDensity::pure([a[0], a[1], a[2], a[3]]).matrix;
            for r in 0..4 {
                for c in 0..4 {
                    m[r][c] += w / total * pure[r][c];
                }
            }
        }
        let c = wootters_concurrence(&TwoQubitDensity::new(m)).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
        if let [(amps, _)] = states[..] {
            let a = normalized(&amps);
            let pure = wootters_concurrence(&TwoQubitDensity::new(m)).unwrap();
            prop_assert!((pure - 2.0 * (a[0] * a[3] - a[1] * a[2]).abs()).abs() <= 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn sector_reduction_is_a_state(k in kappas(6), exc in 0usize..4, pool in prop::collection::vec(-1.0f64..1.0, 64), pair_seed in any::<prop::sample::Index>()) {
        let n = k.len();
        let basis = SectorBasis::enumerate(n, exc).unwrap().shared();
        let raw = &pool[..basis.dim()];
        prop_assume!(raw.iter().any(|v| v.abs() > 1e-6));
        let v = StateVector::new(basis, normalized(raw)).unwrap();
        let i = pair_seed.index(n - 1);
        let rho = reduce_pair_from_sector_state(&v, i, n - 1).unwrap();
        prop_assert!(rho.validate().is_ok());
    }

    #[test]
    fn truncations_bound_the_exact_energy_from_above(k in kappas(6), exc in 1usize..5) {
        let profile = CouplingProfile::from_explicit(&k).unwrap();
        let row1 = TruncatedTridiagonal::build(&profile, exc).unwrap().ground().unwrap().value;
        let row12 = lowest_eigenpair_dense(&build_row12_hamiltonian(&profile, exc).unwrap()).unwrap().value;
        let h = SparseSectorHamiltonian::build(&profile, exc).unwrap();
        let exact = ground_state(&h).unwrap().value;
        let tol = 1e-10 * row1.abs().max(1.0);
        prop_assert!(exact <= row12 + tol && row12 <= row1 + tol, "{exact} {row12} {row1}");
    }
}

