use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bernstein_decay::bounds::{asymptotic_constant, fit_powerlaw_slope, jackson_constant, BoundKind, FracPowerSpec};
use bernstein_decay::graphs::{
    chain_laplacian, cycle_laplacian, geometric_graph_laplacian, grid2d_matrix, read_matrix_market,
    write_matrix_market, SparseSymMatrix,
};
use bernstein_decay::quad::QuadOptions;
use bernstein_decay::report::{
    check_domination, compute_decay_report, cycle_exact_csv, parse_csv, DecayReport, FunctionSpec, ReportOptions,
};
use bernstein_decay::Error;

#[derive(Parser)]
#[command(
    name = "bdecay",
    version,
    about = "Off-diagonal decay bounds for Bernstein functions of sparse matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Chain,
    Cycle,
    Grid2d,
    Geometric,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct ReportArgs {
    /// Matrix Market file (symmetric, coordinate, real).
    #[arg(long)]
    matrix: PathBuf,
    /// Source node, 1-based.
    #[arg(long)]
    source: usize,
    /// Matrix function: frac:ALPHA, log1p or exp:T.
    #[arg(long)]
    func: FunctionSpec,
    /// Comma-separated bound kinds, e.g. closedfrac,jackson.
    #[arg(long)]
    bounds: String,
    /// Relative tolerance for quadrature-based bounds.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a test matrix in Matrix Market format.
    Gen {
        #[arg(long, value_enum)]
        kind: GraphKind,
        /// Number of nodes; the side length for grid2d.
        #[arg(long)]
        n: usize,
        /// Diagonal shift of the grid matrix.
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        /// Connection radius of the geometric graph.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute entries and bounds for one column of f(A).
    Report {
        #[command(flatten)]
        args: ReportArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Add min(bound, ||f(A)||_2) columns.
        #[arg(long)]
        cap_trivial: bool,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every bound dominates its entry; exit status 1 on a violation.
    Check {
        /// Check a saved JSON report instead of computing one.
        #[arg(long, conflicts_with_all = ["matrix", "source", "func", "bounds", "tol"])]
        report: Option<PathBuf>,
        #[command(flatten)]
        args: Option<ReportArgs>,
    },
    /// Print the asymptotic and Jackson constants for z^alpha.
    Constants {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        rho: f64,
    },
    /// Exact column of the square root of the odd cycle Laplacian.
    CycleExact {
        #[arg(long)]
        n: usize,
        /// Source node, 1-based.
        #[arg(long)]
        source: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least-squares power-law slope of a CSV column against distance.
    Slope {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        column: String,
        #[arg(long, default_value_t = 2.0)]
        dmin: f64,
    },
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn generate(
    kind: GraphKind,
    n: usize,
    sigma: f64,
    radius: Option<f64>,
    seed: u64,
) -> Result<(SparseSymMatrix, String), Error> {
    Ok(match kind {
        GraphKind::Chain => (chain_laplacian(n)?, format!("chain Laplacian, n = {n}")),
        GraphKind::Cycle => (cycle_laplacian(n)?, format!("cycle Laplacian, n = {n}")),
        GraphKind::Grid2d => (grid2d_matrix(n, sigma)?, format!("2D grid, side {n}, sigma = {sigma}")),
        GraphKind::Geometric => {
            let r = radius.ok_or_else(|| Error::Size("geometric graphs need --radius".into()))?;
            (
                geometric_graph_laplacian(n, r, seed)?,
                format!("geometric graph Laplacian, n = {n}, radius = {r}, seed = {seed}"),
            )
        }
    })
}

fn build_report(args: &ReportArgs, cap_trivial: bool) -> Result<DecayReport, Error> {
    let a = read_matrix_market(&args.matrix)?;
    let kinds = BoundKind::parse_list(&args.bounds)?;
    let mut opts = ReportOptions {
        cap_trivial,
        ..ReportOptions::default()
    };
    if let Some(tol) = args.tol {
        opts.quad = QuadOptions::with_tolerances(tol, opts.quad.abs_tol);
    }
    let mut report = compute_decay_report(&a, args.source, args.func, &kinds, &opts)?;
    report.matrix.label = args.matrix.file_name().map(|s| s.to_string_lossy().into_owned());
    Ok(report)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Gen {
            kind,
            n,
            sigma,
            radius,
            seed,
            out,
        } => {
            let (a, comment) = generate(kind, n, sigma, radius, seed)?;
            write_matrix_market(&out, &a, Some(&comment))?;
        }
        Command::Report {
            args,
            format,
            cap_trivial,
            out,
        } => {
            let report = build_report(&args, cap_trivial)?;
            let text = match format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json()? + "\n",
            };
            write_output(out.as_deref(), &text)?;
        }
        Command::Check { report, args } => {
            let report = match (report, args) {
                (Some(path), _) => DecayReport::from_json(&fs::read_to_string(path)?)?,
                (None, Some(args)) => build_report(&args, false)?,
                (None, None) => {
                    return Err(Error::Size(
                        "check needs --report or --matrix, --source, --func and --bounds".into(),
                    ))
                }
            };
            let summary = check_domination(&report);
            println!(
                "checked {} bound values, {} violations",
                summary.checked,
                summary.violations.len()
            );
            if let (Some(lo), Some(hi)) = (summary.min_ratio, summary.max_ratio) {
                println!("bound / |entry| ranges over [{lo:.3e}, {hi:.3e}]");
            }
            for v in &summary.violations {
                eprintln!(
                    "violation: j = {}, distance {}, {} bound {:e} < |entry| {:e}",
                    v.j,
                    v.distance,
                    v.kind.name(),
                    v.bound,
                    v.abs_entry
                );
            }
            if !summary.is_clean() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Constants { alpha, rho } => {
            let alpha = FracPowerSpec::new(alpha)?;
            println!("asymptotic_constant = {:.2}", asymptotic_constant(alpha, rho)?);
            println!("jackson_constant = {:.2}", jackson_constant(alpha, rho)?);
        }
        Command::CycleExact { n, source, out } => {
            write_output(out.as_deref(), &cycle_exact_csv(n, source)?)?;
        }
        Command::Slope { input, column, dmin } => {
            let table = parse_csv(&fs::read_to_string(&input)?)?;
            let slope = fit_powerlaw_slope(&table.series(&column)?, dmin)?;
            println!("{slope:.6}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("bdecay: error: {e}");
            ExitCode::from(2)
        }
    }
}
