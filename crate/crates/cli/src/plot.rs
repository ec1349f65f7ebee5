//! Line plots of the sweep CSVs as self-contained SVG. Output depends only
//! on the CSV contents, so identical input gives identical bytes.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use itc_core::experiments::Experiment;

use crate::output::HEADER;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlotError {
    Schema(String),
    Empty,
}

impl fmt::Display for PlotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Schema(msg) => write!(f, "CSV does not match the plot kind: {msg}"),
            Self::Empty => f.write_str("nothing to plot: the CSV has no data rows for this kind"),
        }
    }
}

impl std::error::Error for PlotError {}

struct Layout {
    quantity: &'static str,
    method: &'static str,
    x_label: &'static str,
    y_label: &'static str,
    title: &'static str,
}

fn layout(kind: Experiment) -> Layout {
    match kind {
        Experiment::Spectrum => Layout {
            quantity: "energy",
            method: "row1",
            x_label: "N",
            y_label: "row-1 ground energy",
            title: "Ground energy by excitation number",
        },
        Experiment::DeltaE => Layout {
            quantity: "delta_e_percent",
            method: "row12_vs_row1",
            x_label: "N",
            y_label: "Delta E (%)",
            title: "Energy shift from row-2 states",
        },
        Experiment::ConcProfile => Layout {
            quantity: "concurrence",
            method: "analytic_general",
            x_label: "j",
            y_label: "C(1, j)",
            title: "Concurrence between atom 1 and atom j",
        },
        Experiment::ConcFirstLast => Layout {
            quantity: "concurrence",
            method: "analytic_general",
            x_label: "N",
            y_label: "C(1, N)",
            title: "Concurrence between the first and last atom",
        },
    }
}

type Series = BTreeMap<(usize, usize), Vec<(f64, f64)>>;

fn read_series(csv_text: &str, kind: Experiment) -> Result<Series, PlotError> {
    let schema = |m: String| PlotError::Schema(m);
    for line in csv_text.lines().take_while(|l| l.starts_with('#')) {
        if let Some(name) = line.strip_prefix("# experiment = ") {
            if name.trim() != kind.name() {
                return Err(schema(format!("file holds {:?}, plot asks for {:?}", name.trim(), kind.name())));
            }
        }
    }
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(csv_text.as_bytes());
    let header = reader.headers().map_err(|e| schema(e.to_string()))?.clone();
    if header.iter().ne(HEADER) {
        return Err(schema(format!("unexpected header {:?}", header.iter().collect::<Vec<_>>())));
    }
    let lay = layout(kind);
    let mut series = Series::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| schema(e.to_string()))?;
        if &rec[4] != lay.quantity || &rec[5] == "NA" || &rec[6] != lay.method {
            continue;
        }
        let int = |i: usize| rec[i].parse::<usize>().map_err(|_| schema(format!("bad integer {:?}", &rec[i])));
        let n = int(0)?;
        let k = int(1)?;
        let y: f64 = rec[5].parse().map_err(|_| schema(format!("bad value {:?}", &rec[5])))?;
        let (key, x) = match kind {
            Experiment::ConcProfile => ((n, k), int(3)? as f64),
            _ => ((k, 0), n as f64),
        };
        series.entry(key).or_default().push((x, y));
    }
    if series.is_empty() {
        return Err(PlotError::Empty);
    }
    for points in series.values_mut() {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    Ok(series)
}

fn label(kind: Experiment, key: (usize, usize)) -> String {
    match kind {
        Experiment::ConcProfile => format!("N={}, k={}", key.0, key.1),
        _ => format!("k={}", key.0),
    }
}

/// Tick positions covering `[lo, hi]` with a 1-2-5 step.
fn ticks(lo: f64, hi: f64) -> (f64, f64, Vec<f64>) {
    let (lo, hi) = if hi > lo {
        (lo, hi)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
        (lo - pad, hi + pad)
    };
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let start = (lo / step).floor() * step;
    let end = (hi / step).ceil() * step;
    let count = ((end - start) / step).round() as usize;
    let marks = (0..=count).map(|t| start + t as f64 * step).collect();
    (start, end, marks)
}

fn tick_label(v: f64) -> String {
    let s = format!("{:.6}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];
const DASHES: [&str; 3] = ["", " stroke-dasharray=\"6 3\"", " stroke-dasharray=\"2 2\""];

/// Renders the CSV produced for `kind` as an SVG document.
pub fn emit_plot(csv_text: &str, kind: Experiment) -> Result<String, PlotError> {
    let series = read_series(csv_text, kind)?;
    let lay = layout(kind);

    let (w, h) = (760.0, 480.0);
    let (left, right, top, bottom) = (80.0, 170.0, 40.0, 60.0);
    let (pw, ph) = (w - left - right, h - top - bottom);
    let points = series.values().flatten();
    let (xmin, xmax) = points.clone().fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| (a.0.min(p.0), a.1.max(p.0)));
    let (ymin, ymax) = points.fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| (a.0.min(p.1), a.1.max(p.1)));
    let (x0, x1, xt) = ticks(xmin, xmax);
    let (y0, y1, yt) = ticks(ymin, ymax);
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    let _ = writeln!(s, "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>", left + pw / 2.0, lay.title);
    let _ = writeln!(
        s,
        "<rect x=\"{left:.2}\" y=\"{top:.2}\" width=\"{pw:.2}\" height=\"{ph:.2}\" fill=\"none\" stroke=\"black\"/>"
    );
    for &t in &xt {
        let x = sx(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/><text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            top + ph,
            top + ph + 5.0,
            top + ph + 19.0,
            tick_label(t)
        );
    }
    for &t in &yt {
        let y = sy(t);
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{left:.2}\" y2=\"{y:.2}\" stroke=\"black\"/><line x1=\"{left:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/><text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
            left - 5.0,
            left + pw,
            left - 8.0,
            y + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        left + pw / 2.0,
        h - 18.0,
        lay.x_label
    );
    let _ = writeln!(
        s,
        "<text x=\"20\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">{}</text>",
        top + ph / 2.0,
        top + ph / 2.0,
        lay.y_label
    );
    for (idx, (key, pts)) in series.iter().enumerate() {
        let colour = PALETTE[idx % PALETTE.len()];
        let dash = DASHES[(idx / PALETTE.len()) % DASHES.len()];
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\"{dash}/>",
            path.join(" ")
        );
        for &(x, y) in pts {
            let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{colour}\"/>", sx(x), sy(y));
        }
        let ly = top + 10.0 + 16.0 * idx as f64;
        let lx = left + pw + 15.0;
        let _ = writeln!(
            s,
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{colour}\" stroke-width=\"1.5\"{dash}/><text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            label(kind, *key)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
