//! Executes one subcommand: sweep, write CSV (and SVG), verify.

use std::fs;
use std::io::BufWriter;
use std::path::PathBuf;

use itc_core::entanglement::formula_audit;
use itc_core::experiments::{
    run_conc_first_last, run_conc_profile, run_delta_e, run_spectrum, verify_conc, verify_delta_e, verify_spectrum,
    Check, Experiment,
};

use crate::config::RunConfig;
use crate::output::{
    audit_records, comment_header, conc_records, delta_e_records, spectrum_records, write_csv, AUDIT_HEADER, HEADER,
};
use crate::plot::emit_plot;

pub type BoxError = Box<dyn std::error::Error + Send + Sync>;

#[derive(Debug)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn write_file(path: &PathBuf, f: impl FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>) -> Result<(), BoxError> {
    let mut w = BufWriter::new(fs::File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?);
    f(&mut w)?;
    Ok(())
}

pub fn execute(run: &RunConfig) -> Result<Outcome, BoxError> {
    fs::create_dir_all(&run.out).map_err(|e| format!("cannot create {}: {e}", run.out.display()))?;
    let sweep = &run.sweep;
    let comments = comment_header(run);
    let mut files = Vec::new();

    let (records, checks) = match run.experiment {
        Experiment::Spectrum => {
            let rows = run_spectrum(sweep)?;
            (spectrum_records(&rows), verify_spectrum(&rows))
        }
        Experiment::DeltaE => {
            let rows = run_delta_e(sweep)?;
            (delta_e_records(&rows), verify_delta_e(&rows))
        }
        exp @ (Experiment::ConcProfile | Experiment::ConcFirstLast) => {
            let rows = if exp == Experiment::ConcProfile {
                run_conc_profile(sweep)?
            } else {
                run_conc_first_last(sweep)?
            };
            let mut audit = Vec::new();
            let mut ns = sweep.n_atoms.clone();
            ns.sort_unstable();
            ns.dedup();
            let mut ks = sweep.ks.clone();
            ks.sort_unstable();
            ks.dedup();
            for n in ns {
                audit.extend(formula_audit(&sweep.profile.build(n)?, &ks, &sweep.pair.pairs(n)?)?);
            }
            let path = run.out.join("formula_audit.csv");
            write_file(&path, |w| write_csv(w, &comments, AUDIT_HEADER, &audit_records(&audit)))?;
            files.push(path);
            (conc_records(&rows), verify_conc(sweep, &rows, exp)?)
        }
    };

    let csv_path = run.out.join(format!("{}.csv", run.experiment.name()));
    write_file(&csv_path, |w| write_csv(w, &comments, HEADER, &records))?;
    files.insert(0, csv_path.clone());

    if run.plot {
        let svg = emit_plot(&fs::read_to_string(&csv_path)?, run.experiment)?;
        let svg_path = run.out.join(format!("{}.svg", run.experiment.name()));
        fs::write(&svg_path, svg)?;
        files.insert(1, svg_path);
    }

    let checks = if run.verify { checks } else { Vec::new() };
    Ok(Outcome { files, checks })
}
