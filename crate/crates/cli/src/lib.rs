//! Command-line front end: configuration, CSV and SVG output, and the
//! `--verify` report for the figure sweeps.

pub mod config;
pub mod output;
pub mod plot;
pub mod run;

pub use plot::{emit_plot, PlotError};
