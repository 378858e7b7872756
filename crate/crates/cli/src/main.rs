use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fivecolor::batch::{loglog_slope, time_coloring, validate_builtin, BENCH_SIZES};
use fivecolor::catalog::Outcome;
use fivecolor::instances::{generate_report, read_pg, write_pg, GenSpec};
use fivecolor::{
    audit, check_coloring, color_planar_with, find_occurrence, ColorOptions, Coloring, EmbeddedGraph, Error,
    Triangulation,
};

#[derive(Parser)]
#[command(name = "fivecolor", version, about = "Five-color planar graphs with a small fifth color class")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// pg/1 graph file; `-` or absent reads stdin
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Color a pg/1 graph and print `<v> <color>` lines plus a stats line
    Color {
        #[command(flatten)]
        input: Input,
        /// Write the coloring here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Re-check invariants after every reduction level
        #[arg(long)]
        audit: bool,
        /// Print run statistics to stderr
        #[arg(short, long)]
        verbose: bool,
    },
    /// Check a coloring against a graph
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Print the first catalog occurrence in a triangulation
    Match {
        #[command(flatten)]
        input: Input,
    },
    /// Discharging report for a triangulation
    Audit {
        #[command(flatten)]
        input: Input,
        /// Treat the matcher as having found nothing
        #[arg(long)]
        assume_unmatched: bool,
    },
    /// Write a random triangulation in pg/1
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        #[arg(long)]
        min_degree_5: bool,
    },
    /// Catalog operations
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Time coloring across sizes and fit the growth exponent
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = BENCH_SIZES)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Run every validation scenario of the built-in catalog
    Validate,
}

/// Failure with its process exit code.
struct Exit {
    code: u8,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit { code: if e.is_tripwire() { 2 } else { 1 }, message: e.to_string() }
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit { code: 1, message: e.to_string() }
    }
}

fn read_text(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&PathBuf>) -> Result<EmbeddedGraph, Exit> {
    Ok(read_pg(&read_text(path)?)?)
}

/// Parses `<v> <color>` lines; the trailing stats line and `#` comments are
/// skipped.
fn read_coloring(text: &str, n: usize) -> Result<Coloring, Exit> {
    let mut colors = vec![0u8; n];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() || line.starts_with("n=") {
            continue;
        }
        let bad = |message: &str| Exit::from(Error::Parse { line: i + 1, message: message.into() });
        let mut parts = line.split_whitespace();
        let (Some(v), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad("expected `<vertex> <color>`"));
        };
        let v: usize = v.parse().map_err(|_| bad("bad vertex id"))?;
        let c: u8 = c.parse().map_err(|_| bad("bad color"))?;
        if v >= n {
            return Err(bad("vertex out of range"));
        }
        if !(1..=5).contains(&c) {
            return Err(bad("color outside 1..5"));
        }
        colors[v] = c;
    }
    Ok(Coloring::from_colors(colors).expect("colors checked"))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Exit> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Exit> {
    match cli.command {
        Command::Color { input, output, audit, verbose } => {
            let g = read_graph(input.input.as_ref())?;
            let run = color_planar_with(&g, ColorOptions { audit, record: false })?;
            let report = check_coloring(&g, &run.coloring);
            let mut text = String::new();
            for v in g.vertices() {
                let _ = writeln!(text, "{v} {}", run.coloring.get(v).unwrap_or(0));
            }
            let verdict = if report.proper() && report.bound_ok() { "PASS" } else { "FAIL" };
            let _ = writeln!(text, "n={} v5={} bound={verdict}", report.n, report.fifth);
            if verbose {
                let s = &run.stats;
                eprintln!(
                    "levels={} free_color={} swaps={} fifth={} fill={} families={:?}",
                    s.levels,
                    s.free_color_calls,
                    s.swaps,
                    s.fifth_assignments,
                    run.fill.len(),
                    s.by_family
                );
            }
            match output {
                Some(p) => fs::write(p, text)?,
                None => emit(out, &text)?,
            }
            if verdict == "FAIL" {
                return Err(Exit { code: 2, message: "coloring failed its own check".into() });
            }
        }
        Command::Verify { graph, coloring } => {
            let g = read_graph(Some(&graph))?;
            let col = read_coloring(&fs::read_to_string(coloring)?, g.id_bound())?;
            let r = check_coloring(&g, &col);
            let mut text = String::new();
            for &(u, v) in &r.violations {
                let _ = writeln!(text, "violation {u} {v}");
            }
            for &v in &r.uncolored {
                let _ = writeln!(text, "uncolored {v}");
            }
            let proper = if r.proper() { "PASS" } else { "FAIL" };
            let bound = if r.bound_ok() { "PASS" } else { "FAIL" };
            let _ = writeln!(text, "n={} v5={} proper={proper} bound={bound}", r.n, r.fifth);
            emit(out, &text)?;
            if !(r.proper() && r.bound_ok()) {
                return Err(Exit { code: 1, message: format!("{} violating edges", r.violations.len()) });
            }
        }
        Command::Match { input } => {
            let g = read_graph(input.input.as_ref())?;
            let t = Triangulation::new(g)?;
            match find_occurrence(&t) {
                Some(occ) => {
                    let verts: Vec<String> = occ.vertices.iter().map(|v| v.to_string()).collect();
                    let mut line = format!("{} offset={} vertices={}", occ.id, occ.offset, verts.join(","));
                    if let Some(d) = occ.hub_degree {
                        let _ = write!(line, " hub_degree={d}");
                    }
                    emit(out, &format!("{line}\n"))?;
                }
                None => {
                    emit(out, "NONE\n")?;
                    return Err(Exit { code: 3, message: "no configuration matched".into() });
                }
            }
        }
        Command::Audit { input, assume_unmatched } => {
            let g = read_graph(input.input.as_ref())?;
            let t = Triangulation::new(g)?;
            let matched = !assume_unmatched && find_occurrence(&t).is_some();
            let report = audit(&t, matched)?;
            let mut text = format!("sum={} ok\n", report.sum);
            for (v, c) in report.charges.iter().filter(|(_, c)| **c != 0.into()) {
                let _ = writeln!(text, "{v} {}/{}", c.numer(), c.denom());
            }
            if let Some(w) = &report.inconsistency {
                let list: Vec<String> = w.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(text, "inconsistency positive={}", list.join(","));
            }
            emit(out, &text)?;
            if report.inconsistency.is_some() {
                return Err(Exit { code: 4, message: "no configuration matched on a minimum-degree-5 input".into() });
            }
        }
        Command::Generate { seed, n, flips, min_degree_5 } => {
            if n < 4 {
                return Err(Exit { code: 1, message: "--n must be at least 4".into() });
            }
            let mut spec = GenSpec::new(seed, n, flips);
            if min_degree_5 {
                spec = spec.shaped();
            }
            let g = generate_report(spec);
            if g.shaping_exhausted {
                eprintln!("shaping budget exhausted before minimum degree 5");
            }
            emit(out, &write_pg(&g.triangulation))?;
        }
        Command::Catalog { action: CatalogAction::Validate } => {
            let mut text = String::new();
            let mut failed = 0;
            for report in validate_builtin() {
                for s in &report.scenarios {
                    match &s.outcome {
                        Outcome::Pass(_) => {
                            let _ = writeln!(text, "{} {} PASS", report.entry, s.name);
                        }
                        Outcome::Fail(why) => {
                            failed += 1;
                            let _ = writeln!(text, "{} {} FAIL", report.entry, s.name);
                            eprintln!("{} {}: {why}", report.entry, s.name);
                        }
                        Outcome::Unreachable => eprintln!("{} {} unreachable", report.entry, s.name),
                    }
                }
            }
            emit(out, &text)?;
            if failed > 0 {
                return Err(Exit { code: 1, message: format!("{failed} scenarios failed") });
            }
        }
        Command::Bench { sizes, reps, seed } => {
            if sizes.len() < 2 {
                return Err(Exit { code: 1, message: "need at least two sizes".into() });
            }
            let mut points = Vec::new();
            for &n in &sizes {
                if n < 4 {
                    return Err(Exit { code: 1, message: format!("size {n} below 4") });
                }
                let t = time_coloring(seed, n, reps);
                emit(out, &format!("n={n} ms={:.3}\n", t.as_secs_f64() * 1e3))?;
                points.push((n, t));
            }
            emit(out, &format!("exponent={:.3}\n", loglog_slope(&points)))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
