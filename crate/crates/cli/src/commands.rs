use std::fmt::Write as _;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use decaypoint::{
    find_decay_point, make_chain_map, perron_direction, random_contractive, solve_problem1,
    spectral_radius, CertificateReport, MapSpec, MonotoneMap, NonnegativeMatrix, OrthantVector,
    SolveReport, SolverConfig, TieBreak, DEFAULT_EPSILON, DEFAULT_K_MAX, DEFAULT_MAX_ITERATIONS,
    DEFAULT_STOP_TOL,
};
use rayon::prelude::*;

use crate::spec::read_map_spec;
use crate::Exit;

/// Iteration cap of sweeps unless `--max-iterations` is given.
pub const SWEEP_MAX_ITERATIONS: usize = 100_000;
/// Spectral radius of the matrices drawn by `sweep --family linear-random`.
pub const SWEEP_RHO: f64 = 0.8;
const SPECTRAL_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "decaypoint",
    version,
    about = "Decay points and region-of-attraction certificates for monotone maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search S_r for a point s* with Ts* << s*.
    Find(FindArgs),
    /// Find s* and certify [0, s*] by iterating from s*.
    Verify(VerifyArgs),
    /// Run the solver over a grid of dimensions and slacks, writing CSV.
    Sweep(SweepArgs),
    /// Spectral radius and Perron direction of a linear map.
    Spectral(SpectralArgs),
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Map file (TOML).
    #[arg(long)]
    pub map: PathBuf,
    /// Radius r of the sphere S_r.
    #[arg(long, allow_negative_numbers = true)]
    pub radius: f64,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: usize,
    #[arg(long, default_value = "max", value_parser = parse_tie_break)]
    pub tie_break: TieBreak,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Sup-norm below which the trajectory counts as converged.
    #[arg(long, default_value_t = DEFAULT_STOP_TOL, allow_negative_numbers = true)]
    pub stop_tol: f64,
    /// Maximum number of trajectory steps.
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Chain,
    LinearRandom,
}

impl SweepFamily {
    fn name(self) -> &'static str {
        match self {
            Self::Chain => "chain",
            Self::LinearRandom => "linear-random",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: SweepFamily,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub dims: Vec<usize>,
    /// Comma-separated slacks.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_negative_numbers = true)]
    pub epsilons: Vec<f64>,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub radius: f64,
    /// Random matrices per (n, epsilon); chain sweeps run once per pair.
    #[arg(long, default_value_t = 10)]
    pub instances: u64,
    /// Seed of the first instance; instance k uses seed + k.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = SWEEP_MAX_ITERATIONS)]
    pub max_iterations: usize,
    #[arg(long, default_value = "max", value_parser = parse_tie_break)]
    pub tie_break: TieBreak,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[arg(long)]
    pub map: PathBuf,
}

fn parse_tie_break(s: &str) -> std::result::Result<TieBreak, String> {
    s.parse().map_err(|e: decaypoint::Error| e.to_string())
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<Exit> {
    match command {
        Command::Find(args) => cmd_find(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Sweep(args) => cmd_sweep(args, out),
        Command::Spectral(args) => cmd_spectral(args, out),
    }
}

fn load(args: &SolverArgs) -> Result<(MapSpec, Box<dyn MonotoneMap>, SolverConfig)> {
    let spec = read_map_spec(&args.map)?;
    let map = spec.build()?;
    let cfg = SolverConfig::new(args.radius)
        .with_epsilon(args.epsilon)
        .with_max_iterations(args.max_iterations)
        .with_tie_break(args.tie_break);
    cfg.validate()?;
    Ok((spec, map, cfg))
}

fn join(v: &OrthantVector) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn solve_fields(report: &SolveReport, cfg: &SolverConfig, n: usize) -> String {
    let mut s = format!(
        "success={} n={n} r={} epsilon={} iterations={} level={}",
        report.success, cfg.radius, cfg.epsilon, report.iterations, report.level
    );
    match (&report.s_star, report.margin) {
        (Some(x), Some(m)) => write!(s, " margin={m} s_star={}", join(x)).unwrap(),
        _ => s.push_str(" margin=none s_star=none"),
    }
    let reason = report
        .failure_reason
        .map_or("none".to_string(), |r| r.to_string());
    write!(s, " failure_reason={reason}").unwrap();
    s
}

fn print_solve(out: &mut dyn Write, report: &SolveReport, cfg: &SolverConfig) -> Result<()> {
    if let (Some(s), Some(margin)) = (&report.s_star, report.margin) {
        writeln!(
            out,
            "decay point found after {} iterations",
            report.iterations
        )?;
        writeln!(out, "  s*     = {s}")?;
        writeln!(out, "  margin = {margin:.6e} (epsilon {})", cfg.epsilon)?;
    } else {
        let reason = report
            .failure_reason
            .map_or("unknown".to_string(), |r| r.to_string());
        writeln!(
            out,
            "no decay point after {} iterations: {reason}",
            report.iterations
        )?;
        if let Some(p) = &report.failure_point {
            writeln!(out, "  at {p}")?;
        }
    }
    writeln!(
        out,
        "  finest level {}, facet diameter {:.3e}",
        report.level, report.diameter
    )?;
    Ok(())
}

pub fn cmd_find(args: &FindArgs, out: &mut dyn Write) -> Result<Exit> {
    let (spec, map, cfg) = load(&args.solver)?;
    let report = find_decay_point(&*map, &cfg)?;
    print_solve(out, &report, &cfg)?;
    writeln!(
        out,
        "RESULT: command=find {}",
        solve_fields(&report, &cfg, spec.dim())
    )?;
    Ok(if report.success {
        Exit::Certified
    } else {
        Exit::NoCertificate
    })
}

fn print_certificate(out: &mut dyn Write, cert: &CertificateReport) -> Result<()> {
    if let Some(traj) = &cert.trajectory {
        writeln!(
            out,
            "trajectory from s*: {} steps, final sup-norm {:.3e}, {}",
            traj.steps_used,
            traj.final_sup_norm,
            if traj.nonincreasing {
                "nonincreasing"
            } else {
                "not monotone"
            }
        )?;
    }
    match cert.certified_corner() {
        Some(s) => writeln!(
            out,
            "certified: [0, s*] lies in the region of attraction, s* = {s}"
        )?,
        None => writeln!(out, "no certificate")?,
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<Exit> {
    let (spec, map, cfg) = load(&args.solver)?;
    let cert = solve_problem1(&*map, &cfg, args.stop_tol, args.k_max)?;
    print_solve(out, &cert.solve, &cfg)?;
    print_certificate(out, &cert)?;
    let (steps, norm) = cert
        .trajectory
        .as_ref()
        .map_or(("none".to_string(), "none".to_string()), |t| {
            (t.steps_used.to_string(), t.final_sup_norm.to_string())
        });
    writeln!(
        out,
        "RESULT: command=verify certified={} {} trajectory_steps={steps} final_sup_norm={norm}",
        cert.problem1_satisfied,
        solve_fields(&cert.solve, &cfg, spec.dim())
    )?;
    Ok(if cert.problem1_satisfied {
        Exit::Certified
    } else {
        Exit::NoCertificate
    })
}

/// One solve of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: SweepFamily,
    pub n: usize,
    pub epsilon: f64,
    pub r: f64,
    pub seed: Option<u64>,
    pub iterations: usize,
    pub success: bool,
    pub ms: f64,
}

pub const SWEEP_HEADER: [&str; 8] = [
    "family",
    "n",
    "epsilon",
    "r",
    "seed",
    "iterations",
    "success",
    "ms",
];

/// Solves every (n, ε, instance) combination; rows come back in that order.
pub fn run_sweep(args: &SweepArgs) -> Result<Vec<SweepRow>> {
    if args.dims.is_empty() || args.epsilons.is_empty() {
        bail!("--dims and --epsilons must be nonempty");
    }
    if args.instances == 0 {
        bail!("--instances must be at least 1");
    }
    if let Some(n) = args.dims.iter().find(|n| **n < 2) {
        bail!("dimensions must be at least 2, got {n}");
    }
    let base = SolverConfig::new(args.radius)
        .with_max_iterations(args.max_iterations)
        .with_tie_break(args.tie_break);
    for eps in &args.epsilons {
        base.with_epsilon(*eps).validate()?;
    }
    let seeds: Vec<Option<u64>> = match args.family {
        SweepFamily::Chain => vec![None],
        SweepFamily::LinearRandom => (0..args.instances).map(|k| Some(args.seed + k)).collect(),
    };
    let mut jobs = Vec::new();
    for &n in &args.dims {
        for &eps in &args.epsilons {
            jobs.extend(seeds.iter().map(|&seed| (n, eps, seed)));
        }
    }

    jobs.par_iter()
        .map(|&(n, epsilon, seed)| {
            let cfg = base.with_epsilon(epsilon);
            let map: Box<dyn MonotoneMap> = match (args.family, seed) {
                (SweepFamily::LinearRandom, Some(seed)) => {
                    Box::new(random_contractive(n, SWEEP_RHO, seed)?.to_map())
                }
                _ => Box::new(make_chain_map(n)?),
            };
            let start = Instant::now();
            let report = find_decay_point(&*map, &cfg)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            Ok(SweepRow {
                family: args.family,
                n,
                epsilon,
                r: args.radius,
                seed,
                iterations: report.iterations,
                success: report.success,
                ms,
            })
        })
        .collect()
}

/// Writes rows as CSV with LF line endings.
pub fn write_sweep_csv(rows: &[SweepRow], dest: &mut dyn Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(dest);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.write_record([
            row.family.name().to_string(),
            row.n.to_string(),
            row.epsilon.to_string(),
            row.r.to_string(),
            row.seed.map_or(String::new(), |s| s.to_string()),
            row.iterations.to_string(),
            u8::from(row.success).to_string(),
            format!("{:.3}", row.ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<Exit> {
    let start = Instant::now();
    let rows = run_sweep(args)?;
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    let successes = rows.iter().filter(|r| r.success).count();
    let summary = format!(
        "RESULT: command=sweep family={} rows={} successes={successes} failures={} ms={total_ms:.1}",
        args.family.name(),
        rows.len(),
        rows.len() - successes
    );
    match &args.out {
        Some(path) => {
            let mut file =
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            write_sweep_csv(&rows, &mut file)?;
            writeln!(out, "{} rows written to {}", rows.len(), path.display())?;
            writeln!(out, "{summary} out={}", path.display())?;
        }
        None => {
            write_sweep_csv(&rows, out)?;
            eprintln!("{summary}");
        }
    }
    Ok(if successes == rows.len() {
        Exit::Certified
    } else {
        Exit::NoCertificate
    })
}

pub fn cmd_spectral(args: &SpectralArgs, out: &mut dyn Write) -> Result<Exit> {
    let spec = read_map_spec(&args.map)?;
    let MapSpec::Linear { matrix } = &spec else {
        bail!("spectral analysis needs a linear map, the file describes a different kind");
    };
    let a = NonnegativeMatrix::from_rows(matrix)?;
    let rho = spectral_radius(&a, SPECTRAL_TOL)?;
    let perron = perron_direction(&a).ok();
    writeln!(out, "spectral radius {rho}")?;
    match &perron {
        Some(p) => writeln!(out, "Perron direction {}", p.vector)?,
        None => writeln!(
            out,
            "Perron direction not available (zero or periodic spectrum)"
        )?,
    }
    let below = rho < 1.0;
    writeln!(
        out,
        "{}",
        if below {
            "rho < 1: the linear map admits a decay point"
        } else {
            "rho >= 1: no decay point exists"
        }
    )?;
    writeln!(
        out,
        "RESULT: command=spectral n={} rho={rho} perron={} below_one={below}",
        a.dim(),
        perron.map_or("none".to_string(), |p| join(&p.vector))
    )?;
    Ok(if below {
        Exit::Certified
    } else {
        Exit::NoCertificate
    })
}
