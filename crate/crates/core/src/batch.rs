//! Corpus-level drivers: color, audit or validate many inputs at once.
//!
//! Each function has a `_seq` twin that never spawns threads; the plain
//! version uses the rayon pool when the `parallel` feature is on.

use std::time::{Duration, Instant};

use crate::catalog::{self, validate_entry, ConfigurationSpec, ValidationReport};
use crate::coloring::{check_coloring, ColoringReport};
use crate::discharge::{self, AuditReport};
use crate::embedding::EmbeddedGraph;
use crate::error::Result;
use crate::instances::{generate, GenSpec};
use crate::matcher::find_occurrence;
use crate::par;
use crate::reducer::{color_planar_with, ColorOptions, RunStats};

/// The standard corpus size list, cycled by seed.
pub const CORPUS_SIZES: [usize; 6] = [10, 50, 100, 500, 1000, 2000];

/// Seed `s` (from 1): size from [`CORPUS_SIZES`], `3n` flips, shaped toward
/// minimum degree five when `s` is even.
pub fn corpus_spec(seed: u64) -> GenSpec {
    let n = CORPUS_SIZES[((seed - 1) % 6) as usize];
    let spec = GenSpec::new(seed, n, 3 * n);
    if seed.is_multiple_of(2) {
        spec.shaped()
    } else {
        spec
    }
}

/// One colored input.
#[derive(Clone, Debug)]
pub struct ColorOutcome {
    pub report: ColoringReport,
    pub stats: RunStats,
}

fn color_one(g: &EmbeddedGraph, opts: ColorOptions) -> Result<ColorOutcome> {
    let run = color_planar_with(g, opts)?;
    Ok(ColorOutcome { report: check_coloring(g, &run.coloring), stats: run.stats })
}

pub fn color_many(graphs: &[EmbeddedGraph], opts: ColorOptions) -> Vec<Result<ColorOutcome>> {
    par::map(graphs, |g| color_one(g, opts))
}

pub fn color_many_seq(graphs: &[EmbeddedGraph], opts: ColorOptions) -> Vec<Result<ColorOutcome>> {
    par::map_seq(graphs, |g| color_one(g, opts))
}

/// Generates and colors each spec.
pub fn color_specs(specs: &[GenSpec], opts: ColorOptions) -> Vec<Result<ColorOutcome>> {
    par::map(specs, |&s| color_one(&generate(s), opts))
}

pub fn color_specs_seq(specs: &[GenSpec], opts: ColorOptions) -> Vec<Result<ColorOutcome>> {
    par::map_seq(specs, |&s| color_one(&generate(s), opts))
}

fn audit_one(g: &EmbeddedGraph) -> Result<AuditReport> {
    discharge::audit(g, find_occurrence(g).is_some())
}

/// Discharging audit of each triangulation against the matcher.
pub fn audit_many(graphs: &[EmbeddedGraph]) -> Vec<Result<AuditReport>> {
    par::map(graphs, audit_one)
}

pub fn audit_many_seq(graphs: &[EmbeddedGraph]) -> Vec<Result<AuditReport>> {
    par::map_seq(graphs, audit_one)
}

/// Validation reports for every entry, in catalog order.
pub fn validate_catalog(entries: &[ConfigurationSpec]) -> Vec<ValidationReport> {
    par::map(entries, validate_entry)
}

pub fn validate_catalog_seq(entries: &[ConfigurationSpec]) -> Vec<ValidationReport> {
    par::map_seq(entries, validate_entry)
}

/// Validates the built-in catalog.
pub fn validate_builtin() -> Vec<ValidationReport> {
    validate_catalog(catalog::builtin())
}

/// Sizes timed by the scaling benchmark.
pub const BENCH_SIZES: [usize; 5] = [250, 500, 1000, 2000, 4000];

/// Median wall time of `reps` colorings of a generated triangulation with
/// `n` vertices and `3n` flips.
pub fn time_coloring(seed: u64, n: usize, reps: usize) -> Duration {
    let g = generate(GenSpec::new(seed, n, 3 * n)).into_graph();
    let mut times: Vec<Duration> = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            let col = crate::reducer::color_planar(&g).expect("generated graphs color");
            std::hint::black_box(col);
            t.elapsed()
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}

/// Least-squares slope of `ln t` against `ln n`.
pub fn loglog_slope(points: &[(usize, Duration)]) -> f64 {
    let xy: Vec<(f64, f64)> = points.iter().map(|&(n, t)| ((n as f64).ln(), t.as_secs_f64().max(1e-9).ln())).collect();
    let k = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / k;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
