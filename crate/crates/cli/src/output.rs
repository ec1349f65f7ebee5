//! CSV rendering. Every file starts with `#` comment lines recording the
//! effective configuration, followed by a header row and one value per row:
//! `n_atoms,k,i,j,quantity,value,method`. Atom indices are 1-based and left
//! blank for rows that do not refer to a pair; unavailable values are `NA`.

use std::io;

use itc_core::entanglement::FormulaAuditRow;
use itc_core::experiments::{ConcRow, DeltaERow, PairSpec, ProfileKind, SpectrumRow};

use crate::config::RunConfig;

pub const HEADER: [&str; 7] = ["n_atoms", "k", "i", "j", "quantity", "value", "method"];
pub const AUDIT_HEADER: [&str; 8] = ["n_atoms", "k", "i", "j", "oracle", "general", "own_order", "printed_k2"];

/// `%.15g`: 15 significant digits, trailing zeros removed, exponent form
/// outside `1e-4 <= |x| < 1e15`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 15;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), format_sig)
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// `#` header lines describing the run.
pub fn comment_header(run: &RunConfig) -> Vec<String> {
    let s = &run.sweep;
    let profile = match &s.profile.kind {
        ProfileKind::Sine => "sine".to_string(),
        ProfileKind::Uniform => "uniform".to_string(),
        ProfileKind::Explicit(k) => {
            let k: Vec<_> = k.iter().map(|&x| format_sig(x)).collect();
            format!("explicit [{}]", k.join(","))
        }
    };
    let pair = match s.pair {
        PairSpec::Fixed(i, j) => format!("{},{}", i + 1, j + 1),
        PairSpec::FirstVsAll => "first_vs_all".to_string(),
        PairSpec::FirstVsLast => "first_vs_last".to_string(),
    };
    vec![
        format!("# itc {}", env!("CARGO_PKG_VERSION")),
        format!("# experiment = {}", run.experiment.name()),
        format!("# profile = {profile}"),
        format!("# kappa = {}", format_sig(s.profile.kappa)),
        format!("# length = {}", format_sig(s.profile.length)),
        "# positions = x_j = j * length / (n_atoms + 1), j = 1..n_atoms".to_string(),
        format!("# n_atoms = {}", list(&s.n_atoms)),
        format!("# k = {}", list(&s.ks)),
        format!("# pair = {pair}"),
        format!("# sector_cap = {}", s.sector_cap),
        "# atoms are numbered from 1; NA marks values beyond the caps".to_string(),
    ]
}

type Record = [String; 7];

fn record(n: usize, k: usize, pair: Option<(usize, usize)>, quantity: &str, value: String, method: &str) -> Record {
    let (i, j) = pair.map_or((String::new(), String::new()), |(i, j)| ((i + 1).to_string(), (j + 1).to_string()));
    [n.to_string(), k.to_string(), i, j, quantity.to_string(), value, method.to_string()]
}

pub fn spectrum_records(rows: &[SpectrumRow]) -> Vec<Record> {
    rows.iter()
        .flat_map(|r| {
            let (n, k) = (r.n_atoms, r.k);
            [
                record(n, k, None, "energy", format_sig(r.e_row1), "row1"),
                record(n, k, None, "energy", opt(r.e_row12), "row12"),
                record(n, k, None, "energy", opt(r.e_exact), "exact"),
                record(n, k, None, "energy", opt(r.e_analytic), "closed_form"),
            ]
        })
        .collect()
}

pub fn delta_e_records(rows: &[DeltaERow]) -> Vec<Record> {
    rows.iter()
        .flat_map(|r| {
            let (n, k) = (r.n_atoms, r.k);
            [
                record(n, k, None, "delta_e_percent", format_sig(r.delta_e), "row12_vs_row1"),
                record(n, k, None, "energy", format_sig(r.e_row1), "row1"),
                record(n, k, None, "energy", format_sig(r.e_row12), "row12"),
                record(n, k, None, "energy", opt(r.e_exact), "exact"),
            ]
        })
        .collect()
}

pub fn conc_records(rows: &[ConcRow]) -> Vec<Record> {
    rows.iter()
        .flat_map(|r| {
            let (n, k, p) = (r.n_atoms, r.k, Some((r.i, r.j)));
            [
                record(n, k, p, "concurrence", format_sig(r.analytic), "analytic_general"),
                record(n, k, p, "concurrence_unclamped", format_sig(r.raw), "analytic_general"),
                record(n, k, p, "concurrence", format_sig(r.row1_oracle), "wootters_row1"),
                record(n, k, p, "concurrence", opt(r.exact_oracle), "wootters_exact"),
            ]
        })
        .collect()
}

pub fn audit_records(rows: &[FormulaAuditRow]) -> Vec<[String; 8]> {
    rows.iter()
        .map(|r| {
            [
                r.n_atoms.to_string(),
                r.k.to_string(),
                (r.pair.0 + 1).to_string(),
                (r.pair.1 + 1).to_string(),
                format_sig(r.oracle),
                format_sig(r.general),
                format_sig(r.own_order),
                opt(r.printed_k2),
            ]
        })
        .collect()
}

/// Writes comments, header and records with LF line endings.
pub fn write_csv<W: io::Write, const C: usize>(
    mut w: W,
    comments: &[String],
    header: [&str; C],
    records: &[[String; C]],
) -> io::Result<()> {
    for line in comments {
        writeln!(w, "{line}")?;
    }
    let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    csv.write_record(header)?;
    for r in records {
        csv.write_record(r)?;
    }
    csv.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(-5.0), "-5");
        assert_eq!(format_sig(0.1), "0.1");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333333");
        assert_eq!(format_sig(2f64.sqrt()), "1.4142135623731");
        assert_eq!(format_sig(123456.789), "123456.789");
        assert_eq!(format_sig(1e-5), "1e-05");
        assert_eq!(format_sig(1.5e-7), "1.5e-07");
        assert_eq!(format_sig(0.0001), "0.0001");
        assert_eq!(format_sig(1e15), "1e+15");
        assert_eq!(format_sig(999999999999999.0), "999999999999999");
        assert_eq!(format_sig(0.99999999999999999), "1");
        assert_eq!(format_sig(f64::NAN), "NaN");
    }

    #[test]
    fn round_trip_precision() {
        for x in [std::f64::consts::PI, -1.0 / 7.0, 6.02214076e23, 1.602e-19] {
            let y: f64 = format_sig(x).parse().unwrap();
            assert!((x - y).abs() <= 1e-14 * x.abs());
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        let recs = [record(3, 1, Some((0, 2)), "concurrence", format_sig(0.25), "analytic_general")];
        write_csv(&mut buf, &["# note".to_string()], HEADER, &recs).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# note\nn_atoms,k,i,j,quantity,value,method\n3,1,1,3,concurrence,0.25,analytic_general\n"
        );
    }
}
