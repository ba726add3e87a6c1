use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cubepath::bench::{affine_fit, run_bench, svg_plot, time_points, write_csv, BenchConfig};
use cubepath::cube_model::{classify_angles, parse_curve, CubeCurve};
use cubepath::error::{ParseError, SolverError};
use cubepath::oracle::{build_graph, oracle_then_rba, shortest_cycle};
use cubepath::rubberband::{solve, write_path, SolverConfig, Variant};

/// Approximate shortest closed paths inside simple cube-curves.
#[derive(Parser)]
#[command(name = "cubepath", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a curve file; print cube, critical-edge and angle counts.
    Validate { file: PathBuf },
    /// Run a rubberband variant on a curve.
    Esp(EspArgs),
    /// Shortest cycle in the subdivision graph.
    Oracle(OracleArgs),
    /// Time the solver on generated curves across a size grid.
    Bench(BenchArgs),
}

#[derive(Args)]
struct EspArgs {
    file: PathBuf,
    #[arg(long, default_value = "edge")]
    variant: Variant,
    #[arg(long, default_value_t = 1e-10)]
    epsilon: f64,
    /// Seed the run with the oracle cycle for `m` samples per edge.
    #[arg(long, value_name = "M")]
    seed_oracle: Option<usize>,
    #[arg(long)]
    max_loops: Option<usize>,
    /// Path file destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 16)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the graph (nodes and directed arcs) as text.
    #[arg(long, value_name = "FILE")]
    dump_graph: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Inclusive size range `min..max`.
    #[arg(long, default_value = "10..630", value_parser = parse_sizes)]
    sizes: (usize, usize),
    #[arg(long, default_value_t = 20)]
    step: usize,
    #[arg(long, default_value_t = 3)]
    per_size: usize,
    #[arg(long, default_value = "edge")]
    variant: Variant,
    #[arg(long, default_value_t = 1e-10)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also record the oracle length with `M` samples per edge.
    #[arg(long, value_name = "M")]
    oracle_m: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scatter plot of time against size, with the affine fit.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn parse_sizes(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `min..max`, got `{s}`"))?;
    let lo: usize = a.trim().parse().map_err(|_| format!("invalid size `{a}`"))?;
    let hi: usize = b.trim().parse().map_err(|_| format!("invalid size `{b}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Validation(String),
    Solver(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Solver(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::Solver(m) => m,
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::InvalidEpsilon(_) | SolverError::InvalidMaxLoops => Failure::Usage(e.to_string()),
            _ => Failure::Solver(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn load_curve(path: &Path) -> Result<CubeCurve, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    parse_curve(&text).map_err(|e| match e {
        ParseError::Io(e) => io_failure(path, e),
        other => Failure::Validation(format!("{}: {other}", path.display())),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn validate(file: &Path) -> Result<(), Failure> {
    let curve = load_curve(file)?;
    let c = classify_angles(&curve);
    println!(
        "{} cubes, {} critical edges, {} end angles",
        curve.len(),
        curve.critical_edges().len(),
        c.end_angles()
    );
    println!("middle angles: {}", c.middle_angles());
    println!("first-class: {}", c.first_class);
    Ok(())
}

fn esp(a: &EspArgs) -> Result<(), Failure> {
    let mut cfg = SolverConfig::new(a.variant, a.epsilon)?;
    if let Some(k) = a.max_loops {
        cfg.max_loops = k;
        cfg.validate()?;
    }
    let curve = load_curve(&a.file)?;
    let (path, report) = match a.seed_oracle {
        Some(m) => oracle_then_rba(&curve, m, &cfg)?,
        None => solve(&curve, &cfg)?,
    };
    emit(a.out.as_deref(), &a.variant.write_path(&path, a.epsilon, report.loops))?;
    println!(
        "length={:.16e} loops={} time_ms={:.3}",
        path.length(),
        report.loops,
        report.wall_time_ms
    );
    if let Some(l) = report.seed_cycle_length {
        println!("seed_length={l:.16e}");
    }
    Ok(())
}

fn oracle(a: &OracleArgs) -> Result<(), Failure> {
    let curve = load_curve(&a.file)?;
    let graph =
        build_graph(&curve, a.m, SolverConfig::default().tolerance).map_err(|e| Failure::Solver(e.to_string()))?;
    if let Some(p) = &a.dump_graph {
        fs::write(p, graph.dump()).map_err(|e| io_failure(p, e))?;
    }
    let (cycle, length) = shortest_cycle(&graph).map_err(|e| Failure::Solver(e.to_string()))?;
    emit(a.out.as_deref(), &write_path(&cycle, "oracle", 0.0, 0))?;
    println!(
        "length={length:.16e} nodes={} arcs={}",
        graph.nodes().len(),
        graph.arc_count()
    );
    Ok(())
}

fn bench(a: &BenchArgs) -> Result<(), Failure> {
    SolverConfig::new(a.variant, a.epsilon)?;
    if a.step == 0 {
        return Err(Failure::Usage("step must be >= 1".into()));
    }
    let cfg = BenchConfig {
        min_size: a.sizes.0,
        max_size: a.sizes.1,
        step: a.step,
        per_size: a.per_size,
        variant: a.variant,
        epsilon: a.epsilon,
        base_seed: a.seed,
        oracle_m: a.oracle_m,
        threads: a.threads,
    };
    let records = run_bench(&cfg);
    let mut buf = Vec::new();
    write_csv(&mut buf, &records).map_err(|e| Failure::Usage(e.to_string()))?;
    emit(a.out.as_deref(), &String::from_utf8_lossy(&buf))?;
    let fit = affine_fit(&time_points(&records));
    if let Some(p) = &a.svg {
        fs::write(p, svg_plot(&records, fit.as_ref())).map_err(|e| io_failure(p, e))?;
    }
    match fit {
        Some(f) => eprintln!(
            "{} records; time_ms = {:.6} n + {:.6}, R^2 = {:.4}",
            records.len(),
            f.slope,
            f.intercept,
            f.r_squared
        ),
        None => eprintln!("{} records; no fit", records.len()),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Esp(a) => esp(a),
        Command::Oracle(a) => oracle(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
