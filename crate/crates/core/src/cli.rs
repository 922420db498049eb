//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 invalid configuration or
//! arguments, 3 solver diagnostic (eigen failure, defective modes, singular
//! system, imaginary residue, special-function non-convergence).
//! Requested data goes to stdout or `--out`; diagnostics go to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::benchmarks::{
    self, breakthrough_curves, convergence_study, BenchmarkCase, BenchmarkId, Table, TracerScenario,
};
use crate::config::LoadedConfig;
use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::mesh::{
    generate_interval, generate_quarter_disk, generate_rectangle, load_mesh, save_mesh,
};
use crate::problem::Simulation;
use crate::solver::SolverOptions;
use crate::specfun::{mittag_leffler, MLConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "fracfem",
    version,
    about = "Semi-analytical FEM for time-fractional diffusion"
)]
pub struct Cli {
    /// Only report errors on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a configured problem; writes times.csv and summary.json.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides `output.dir`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// L∞ errors and convergence ratios over a spacing ladder.
    Convergence(ConvergenceArgs),
    /// Breakthrough curves at the extraction well.
    Tracer(TracerArgs),
    /// Evaluate E_γ(re + i·im).
    Ml {
        #[arg(long)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        im: f64,
    },
    /// Generate or check mesh files.
    Mesh {
        #[command(subcommand)]
        action: MeshCommand,
    },
    /// Reproduce one of the verification tables (1-6) as CSV.
    Table {
        number: u8,
        #[arg(long, default_value_t = 0.8)]
        gamma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    /// example1, example2 or example3.
    #[arg(long, default_value = "example1")]
    pub case: String,
    #[arg(long, default_value_t = 0.8)]
    pub gamma: f64,
    /// Element counts per side, coarse to fine.
    #[arg(long, value_delimiter = ',', default_values_t = vec![10, 20, 40, 80, 160])]
    pub ladder: Vec<usize>,
    /// Element order for 1D cases.
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    #[arg(long, default_value_t = 10.0)]
    pub t: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TracerArgs {
    /// JSON file overriding scenario fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Fractional orders; γ = 1 is always added.
    #[arg(long = "gamma")]
    pub gammas: Vec<f64>,
    #[arg(long, default_value_t = 10.0)]
    pub dt: f64,
    #[arg(long = "t-end", default_value_t = 321.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 20)]
    pub elements: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MeshShape {
    Interval,
    Rectangle,
    QuarterDisk,
}

#[derive(Debug, Subcommand)]
pub enum MeshCommand {
    Gen {
        #[arg(long, value_enum)]
        shape: MeshShape,
        /// Interval length or rectangle width.
        #[arg(long, default_value_t = 1.0)]
        lx: f64,
        #[arg(long, default_value_t = 1.0)]
        ly: f64,
        #[arg(long, default_value_t = 10)]
        nx: usize,
        #[arg(long, default_value_t = 10)]
        ny: usize,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, default_value_t = 2)]
        refine: u32,
        #[arg(long)]
        out: PathBuf,
    },
    Check {
        path: PathBuf,
    },
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config { .. }
        | Error::Parse { .. }
        | Error::MeshValidation(_)
        | Error::InconsistentTags(_)
        | Error::InvalidArgument(_)
        | Error::InvalidOrder(_)
        | Error::UnsupportedQuadrature(_) => 2,
        Error::EigenFailure(_)
        | Error::Defective { .. }
        | Error::ImaginaryResidue { .. }
        | Error::SingularSystem(_)
        | Error::EmptyFreeDofs
        | Error::NonConvergence(_)
        | Error::SingularJacobian { .. }
        | Error::IndefiniteDiffusion { .. }
        | Error::PoleArgument(_)
        | Error::Overflow(_) => 3,
        Error::Io(_) | Error::NoExactSolution(_) | Error::DivisionByZero => 1,
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let level = if cli.quiet {
        log::LevelFilter::Error
    } else {
        log::LevelFilter::Info
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_env("FRACFEM_LOG")
        .target(env_logger::Target::Stderr)
        .try_init();
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Solve { config, out } => cmd_solve(&config, out.as_deref()),
        Command::Convergence(args) => cmd_convergence(&args, stdout),
        Command::Tracer(args) => cmd_tracer(&args, stdout),
        Command::Ml { gamma, re, im } => {
            let z = mittag_leffler(
                gamma,
                num_complex::Complex64::new(re, im),
                &MLConfig::default(),
            )?;
            if im == 0.0 {
                writeln!(stdout, "{:.15e}", z.re)?;
            } else {
                writeln!(stdout, "{:.15e} {:+.15e}i", z.re, z.im)?;
            }
            Ok(())
        }
        Command::Mesh { action } => cmd_mesh(action, stdout),
        Command::Table { number, gamma, out } => cmd_table(number, gamma, out.as_deref(), stdout),
    }
}

#[derive(Debug, Serialize)]
struct Summary {
    version: &'static str,
    config_hash: String,
    gamma: f64,
    nodes: usize,
    free_dofs: usize,
    eigenvalue_real_min: f64,
    eigenvalue_real_max: f64,
    eigenvalue_imag_max_abs: f64,
    symmetric_route: bool,
    cond_estimate: f64,
    times: usize,
    wall_time_s: f64,
}

/// Solves the configured problem and writes `times.csv` and `summary.json`.
pub fn cmd_solve(config: &Path, out: Option<&Path>) -> Result<()> {
    let start = Instant::now();
    let cfg = LoadedConfig::from_path(config)?;
    let out_dir = match (out, &cfg.config.output.dir) {
        (Some(o), _) => o.to_path_buf(),
        (None, Some(d)) => cfg.base_dir.join(d),
        (None, None) => PathBuf::from("."),
    };
    let problem = cfg.build_problem()?;
    let sim = Simulation::new(problem, cfg.config.gamma, cfg.solver_options())?;
    let times = cfg.times();
    let series = sim.evaluate(&times)?;

    let n = sim.mesh().node_count();
    let mut csv = String::from("t");
    for i in 0..n {
        csv.push_str(&format!(",u{i}"));
    }
    csv.push('\n');
    for (t, row) in series.times.iter().zip(&series.values) {
        csv.push_str(&t.to_string());
        for v in row {
            csv.push(',');
            csv.push_str(&v.to_string());
        }
        csv.push('\n');
    }
    std::fs::create_dir_all(&out_dir)?;
    write_atomic(&out_dir.join("times.csv"), csv.as_bytes())?;

    let (lo, hi) = sim.fact.real_range();
    let summary = Summary {
        version: VERSION,
        config_hash: cfg.hash(),
        gamma: cfg.config.gamma,
        nodes: n,
        free_dofs: sim.fact.dim(),
        eigenvalue_real_min: lo,
        eigenvalue_real_max: hi,
        eigenvalue_imag_max_abs: sim
            .fact
            .lambdas
            .iter()
            .map(|l| l.im.abs())
            .fold(0.0, f64::max),
        symmetric_route: sim.fact.symmetric,
        cond_estimate: sim.fact.cond_estimate,
        times: times.len(),
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    write_atomic(&out_dir.join("summary.json"), json.as_bytes())?;
    log::info!(
        "wrote {} time rows for {n} nodes to {}",
        times.len(),
        out_dir.display()
    );
    Ok(())
}

fn emit(content: &str, out: Option<&Path>, name: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            write_atomic(&dir.join(name), content.as_bytes())
        }
        None => Ok(stdout.write_all(content.as_bytes())?),
    }
}

pub fn cmd_convergence(args: &ConvergenceArgs, stdout: &mut dyn Write) -> Result<()> {
    let id = BenchmarkId::parse(&args.case)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown case `{}`", args.case)))?;
    if args.ladder.is_empty() {
        return Err(Error::InvalidArgument("empty spacing ladder".into()));
    }
    let cases = args
        .ladder
        .iter()
        .map(|&n| match id {
            BenchmarkId::Diffusion1D => Ok(BenchmarkCase::diffusion_1d(n, args.order)),
            BenchmarkId::AdvectionDispersion1D => {
                Ok(BenchmarkCase::advection_dispersion_1d(n, args.order))
            }
            BenchmarkId::Diffusion2D => Ok(BenchmarkCase::diffusion_2d(n)),
            _ => Err(Error::InvalidArgument(format!(
                "case `{}` has no spacing ladder",
                args.case
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = convergence_study(&cases, args.gamma, args.t, &SolverOptions::default())?;
    let mut table = Table {
        header: vec!["h".into(), "linf_error".into(), "ratio".into()],
        rows: Vec::new(),
    };
    for r in rows {
        table.rows.push(vec![Some(r.h), Some(r.error), r.ratio]);
    }
    emit(
        &table.to_csv(),
        args.out.as_deref(),
        "convergence.csv",
        stdout,
    )
}

pub fn cmd_tracer(args: &TracerArgs, stdout: &mut dyn Write) -> Result<()> {
    let scenario: TracerScenario = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| Error::Config {
                field: "scenario".into(),
                msg: format!(
                    "{}: line {}, column {}: {e}",
                    path.display(),
                    e.line(),
                    e.column()
                ),
            })?
        }
        None => TracerScenario::default(),
    };
    let mut gammas = if args.gammas.is_empty() {
        vec![scenario.gamma]
    } else {
        args.gammas.clone()
    };
    if !gammas.contains(&1.0) {
        gammas.push(1.0);
    }
    let (times, curves) = breakthrough_curves(
        &scenario,
        args.elements,
        &gammas,
        args.dt,
        args.t_end,
        &SolverOptions::default(),
    )?;
    let mut header = vec!["t".to_string()];
    header.extend(gammas.iter().map(|g| format!("gamma={g}")));
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    for (i, &t) in times.iter().enumerate() {
        let mut row = vec![Some(t)];
        row.extend(curves.iter().map(|c| Some(c[i])));
        table.rows.push(row);
    }
    emit(&table.to_csv(), args.out.as_deref(), "tracer.csv", stdout)
}

fn cmd_mesh(action: MeshCommand, stdout: &mut dyn Write) -> Result<()> {
    match action {
        MeshCommand::Gen {
            shape,
            lx,
            ly,
            nx,
            ny,
            order,
            refine,
            out,
        } => {
            let mesh = match shape {
                MeshShape::Interval => generate_interval(lx, nx, order)?,
                MeshShape::Rectangle => generate_rectangle(lx, ly, nx, ny)?,
                MeshShape::QuarterDisk => generate_quarter_disk(refine)?,
            };
            save_mesh(&mesh, &out)?;
            log::info!(
                "wrote {} nodes, {} elements to {}",
                mesh.node_count(),
                mesh.elements.len(),
                out.display()
            );
            Ok(())
        }
        MeshCommand::Check { path } => {
            let mesh = load_mesh(&path)?;
            writeln!(
                stdout,
                "ok: dim {} nodes {} elements {}",
                mesh.dim,
                mesh.node_count(),
                mesh.elements.len()
            )?;
            for (tag, faces) in &mesh.boundary_tags {
                writeln!(stdout, "tag {tag}: {} faces", faces.len())?;
            }
            Ok(())
        }
    }
}

fn cmd_table(number: u8, gamma: f64, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let opts = SolverOptions::default();
    let table = match number {
        1 => benchmarks::table1(gamma, &opts)?,
        2 => benchmarks::table2(gamma, &opts)?,
        3 => benchmarks::table3(gamma, 10.0, &opts)?,
        4 => benchmarks::table4(gamma, &opts)?,
        5 => benchmarks::table5(gamma, &opts)?,
        6 => {
            let (t, table) = benchmarks::table6(gamma, &opts)?;
            log::info!("quarter-disk probe time t = {t}");
            table
        }
        n => {
            return Err(Error::InvalidArgument(format!(
                "no table {n}; expected 1-6"
            )))
        }
    };
    emit(&table.to_csv(), out, &format!("table{number}.csv"), stdout)
}
