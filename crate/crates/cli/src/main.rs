mod config;
mod run;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use config::RunConfig;
use robin_bounds::bounds::fmt_sig;
use robin_bounds::geom::{asymmetry_report, measure_polygon};
use robin_bounds::radial::{constant_c, solve_cached, CACHE_ENV};
use robin_bounds::shapes::generate_shape;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "robin-bounds", version, about = "Robin eigenvalue bounds on convex polygons")]
struct Cli {
    /// Directory for cached radial solves.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a JSON config. Exit 1 if any row is violated.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a polygon (`regular:k`, `rect:a:b`, `random:m[:seed]`).
    Shape {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the polygon file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the radial eigenproblem on a ball; omit `--beta` for Dirichlet.
    Radial {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
    },
    /// Print the rows of a finished run.
    Report {
        /// Output directory of `run`.
        #[arg(long, default_value = "robin-bounds-out")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn execute(cli: Cli) -> Result<ExitCode> {
    let cache = cli.cache.as_deref();
    match cli.command {
        Command::Run { config, out } => {
            let mut cfg = RunConfig::load(&config)?;
            if let Some(o) = out {
                cfg.output = o;
            }
            let res = run::run(&cfg, cache)?;
            eprintln!(
                "{} rows written to {}; {} violated",
                res.rows.len(),
                cfg.output.display(),
                res.summary.violations.len()
            );
            for v in &res.summary.violations {
                eprintln!("violated: {v}");
            }
            Ok(if res.summary.violations.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Shape { spec, seed, out } => {
            let poly = generate_shape(&spec, seed)?;
            let (area, perimeter, inradius) = measure_polygon(&poly);
            let file = poly.to_file(&spec);
            match out {
                Some(path) => {
                    std::fs::write(&path, serde_json::to_string_pretty(&file)? + "\n")
                        .with_context(|| format!("writing {}", path.display()))?;
                    let asym = asymmetry_report(&poly);
                    print_json(&json!({
                        "name": spec,
                        "vertices": poly.len(),
                        "area": fmt_sig(area),
                        "perimeter": fmt_sig(perimeter),
                        "inradius": fmt_sig(inradius),
                        "deficit_m": fmt_sig(asym.deficit_m),
                        "hausdorff_star": fmt_sig(asym.hausdorff_star),
                        "fraenkel": fmt_sig(asym.fraenkel),
                    }))?;
                }
                None => println!("{}", serde_json::to_string_pretty(&file)?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Radial { n, p, beta, radius } => {
            let pair = solve_cached(cache, n, p, beta, radius)?;
            print_json(&json!({
                "n": n,
                "p": fmt_sig(p),
                "beta": beta.map(fmt_sig),
                "R": fmt_sig(radius),
                "lambda": fmt_sig(pair.lambda),
                "constant_c": fmt_sig(constant_c(&pair)),
                "v_min": fmt_sig(pair.v_min),
                "v_max": fmt_sig(pair.v_max),
                "lp_norm_p": fmt_sig(pair.lp_norm_p),
                "boundary_residual": fmt_sig(pair.boundary_residual),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { input, format } => {
            let path = input.join("report.json");
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let rep: run::ReportFile =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if rep.schema != run::ROWS_SCHEMA {
                bail!("{} has schema v{}, expected v{}", path.display(), rep.schema, run::ROWS_SCHEMA);
            }
            match format {
                Format::Csv => print!("{}", run::csv(&rep.rows)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep.rows)?),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
