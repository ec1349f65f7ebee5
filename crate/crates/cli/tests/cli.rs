use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use itc_cli::emit_plot;
use itc_core::experiments::Experiment;

fn itc(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itc"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("ITC_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn two_atom_spectrum_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = itc(&["spectrum", "--kappas", "3,4", "--k", "0,1", "--verify"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(
        data_lines(&csv),
        [
            "n_atoms,k,i,j,quantity,value,method",
            "2,0,,,energy,-1,row1",
            "2,0,,,energy,-1,row12",
            "2,0,,,energy,-1,exact",
            "2,0,,,energy,-1,closed_form",
            "2,1,,,energy,-5,row1",
            "2,1,,,energy,-5,row12",
            "2,1,,,energy,-5,exact",
            "2,1,,,energy,-5,closed_form",
        ]
    );
    assert!(csv.starts_with("# itc "));
    assert!(csv.contains("# profile = explicit [3,4]\n"));
    assert!(!csv.contains('\r'));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["conc-profile", "--n-atoms", "6,9", "--k", "1..3", "--plot"];
    assert!(itc(&args, a.path()).status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_itc"))
        .args(args)
        .arg("--out")
        .arg(b.path())
        .env("ITC_WORKERS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    for name in ["conc_profile.csv", "conc_profile.svg", "formula_audit.csv"] {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn concurrence_rows_carry_all_methods() {
    let dir = tempfile::tempdir().unwrap();
    let out = itc(&["conc-first-last", "--n-atoms", "5", "--k", "1", "--verify"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("conc_first_last.csv")).unwrap();
    let rows = data_lines(&csv);
    // kappa_1 kappa_5 / sum kappa^2 for the five-atom sine profile: 1/12
    let fields: Vec<_> = rows[1].split(',').collect();
    assert_eq!(fields[..5], ["5", "1", "1", "5", "concurrence"]);
    assert_eq!(fields[6], "analytic_general");
    let c: f64 = fields[5].parse().unwrap();
    assert!((c - 1.0 / 12.0).abs() <= 1e-15);
    assert_eq!(fields[5].trim_start_matches("0.").len(), 16);
    assert!(rows[2].contains(",concurrence_unclamped,"));
    assert!(rows[3].ends_with(",wootters_row1"));
    assert!(rows[4].ends_with(",wootters_exact"));
    let audit = fs::read_to_string(dir.path().join("formula_audit.csv")).unwrap();
    assert!(data_lines(&audit)[0] == "n_atoms,k,i,j,oracle,general,own_order,printed_k2");
}

#[test]
fn verify_failure_exits_with_two() {
    // The one grid cell where the row-2 shift exceeds 1% at unit amplitude.
    let dir = tempfile::tempdir().unwrap();
    let out = itc(&["delta-e", "--n-atoms", "8", "--k", "6", "--verify"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL row-2 shift below 1%"));
    // Without --verify the same run succeeds.
    let out = itc(&["delta-e", "--n-atoms", "8", "--k", "6"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(itc(&["spectrum", "--no-such-flag"], dir.path()).status.code(), Some(1));
    assert_eq!(itc(&["no-such-command"], dir.path()).status.code(), Some(1));
    assert_eq!(itc(&["spectrum", "--k", "x"], dir.path()).status.code(), Some(1));
    assert_eq!(itc(&["conc-profile", "--profile", "gaussian"], dir.path()).status.code(), Some(1));
    assert_eq!(itc(&["delta-e", "--n-atoms", "30"], dir.path()).status.code(), Some(1));
    let missing = dir.path().join("missing.toml");
    assert_eq!(itc(&["spectrum", "--config", missing.to_str().unwrap()], dir.path()).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_itc"))
        .args(["spectrum", "--n-atoms", "3", "--k", "1", "--out"])
        .arg(dir.path())
        .env("ITC_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "experiment = \"conc_profile\"\nprofile = \"uniform\"\nkappa = 0.5\nn_atoms = [4, 6]\nk = \"1..2\"\n",
    )
    .unwrap();
    let out = itc(&["conc-profile", "--config", cfg.to_str().unwrap(), "--n-atoms", "5"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("conc_profile.csv")).unwrap();
    assert!(csv.contains("# n_atoms = 5\n") && csv.contains("# profile = uniform\n"));
    let k1: Vec<_> = data_lines(&csv)
        .into_iter()
        .filter(|l| l.starts_with("5,1,") && l.ends_with(",concurrence,0.2,analytic_general"))
        .collect();
    assert_eq!(k1.len(), 4);
    // The file is for conc_profile; using it with another subcommand is a usage error.
    assert_eq!(itc(&["spectrum", "--config", cfg.to_str().unwrap()], dir.path()).status.code(), Some(1));
}

#[test]
fn plots_from_written_csv() {
    let dir = tempfile::tempdir().unwrap();
    assert!(itc(&["delta-e", "--n-atoms", "4..6", "--k", "1..3", "--plot"], dir.path()).status.success());
    let csv = fs::read_to_string(dir.path().join("delta_e.csv")).unwrap();
    let svg = fs::read_to_string(dir.path().join("delta_e.svg")).unwrap();
    assert_eq!(emit_plot(&csv, Experiment::DeltaE).unwrap(), svg);
    assert_eq!(svg.matches("<polyline").count(), 3);
    assert!(emit_plot(&csv, Experiment::ConcProfile).is_err());
    let header_only: String = csv.lines().take_while(|l| l.starts_with('#')).chain(["n_atoms,k,i,j,quantity,value,method"]).collect::<Vec<_>>().join("\n");
    assert!(emit_plot(&header_only, Experiment::DeltaE).is_err());
}
