//! Command-line driver. Exit status: 0 when every certificate passes, 1 when
//! one fails, 2 on usage, parse or input errors.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::frequency::{check_monotonicity, frequency_trace, self_calibrated_kappa};
use crate::graph::{cartesian_product, strip_truncation, VertexFunction, VertexSubset, WeightedGraph};
use crate::heat::{ancient_from_modes, classify_growth, evolve, uniform_grid, Coefficient, HeatProblem};
use crate::io::{
    certificates_json, dichotomy_json, emit_graph, q_table_csv, read_graph, spectrum_csv, to_json,
    trace_csv, trajectory_csv, write_atomic, QRow, TrajectoryMeta,
};
use crate::liouville::{
    calibrate_constant, calibration_family, iteration_step, q_mass, radius_pairs,
    strip_dichotomy_experiment, DichotomyConfig, StripExperiment, TRUNCATION_MARGIN,
};
use crate::spectral::{dirichlet_data, full_spectrum};
use crate::suites;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker threads of experiment batches.
pub const THREADS_ENV: &str = "CALORIC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "caloric", version, about = "Heat equations and ancient solutions on weighted graphs")]
pub struct Cli {
    /// Seed for randomized suites and random initial data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for artifacts; without it the main artifact goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides the tolerance of the identity checks (greens, poincare).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect or build graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Eigenvalues of the Laplacian.
    Spectrum { graph: PathBuf },
    /// First Dirichlet eigenvalue, Poincaré constant and ε of a subset.
    Dirichlet {
        graph: PathBuf,
        /// Comma-separated vertex indices.
        #[arg(long)]
        subset: String,
    },
    /// Evolve initial data and export the trajectory.
    Evolve(EvolveArgs),
    /// Frequency trace and monotonicity certificate of an evolved trajectory.
    Frequency {
        #[command(flatten)]
        evolve: EvolveArgs,
        /// Write the trace CSV here.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
    /// Reverse Poincaré, iteration growth and dichotomy on a truncated strip.
    Strip(StripArgs),
    /// Growth classification of an ancient solution built from eigenmodes.
    Finite {
        graph: PathBuf,
        /// `index:amplitude` pairs, comma-separated, into the non-increasing spectrum.
        #[arg(long)]
        modes: String,
        #[arg(long, default_value_t = 40.0)]
        horizon: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    /// Vertex count, edges, vertex weights and fingerprint.
    Info { graph: PathBuf },
    /// Weighted Cartesian product of two graphs.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
    },
    /// Truncation of `G₀ □ ℤ` to levels `−radius..=radius`.
    Strip {
        base: PathBuf,
        #[arg(long)]
        radius: usize,
    },
}

#[derive(Debug, Clone, Args)]
struct EvolveArgs {
    graph: PathBuf,
    /// Coefficient: a constant or one value per vertex, comma-separated.
    #[arg(long, default_value = "0")]
    c: String,
    /// `start:end:steps`.
    #[arg(long, default_value = "0:1:100")]
    grid: String,
    /// Initial data: `random` or one value per vertex, comma-separated.
    #[arg(long, default_value = "random")]
    u0: String,
    /// Dirichlet support (comma-separated); the whole graph by default.
    #[arg(long)]
    subset: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Suite {
    Greens,
    Poincare,
    Monotonicity,
    Harnack,
    Backward,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Number of random samples (default 200 for greens, 100 otherwise).
    #[arg(long)]
    count: Option<usize>,
    /// Largest vertex count (default 40 for greens, 20 otherwise).
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Debug, Args)]
struct StripArgs {
    /// Base graph file (or set `graph` in the config).
    base: Option<PathBuf>,
    /// JSON experiment configuration; command-line flags are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base subset W₀, comma-separated.
    #[arg(long, default_value = "0")]
    w0: String,
    #[arg(long, default_value_t = 12)]
    radius: usize,
    /// Coefficient as a fraction of ε.
    #[arg(long, default_value_t = 0.9)]
    c_fraction: f64,
    /// Inner radii, comma-separated (default: all admissible).
    #[arg(long)]
    r: Option<String>,
    /// Outer radii, comma-separated (default: all admissible).
    #[arg(long = "R")]
    big_r: Option<String>,
    /// Iteration depth.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Number of seeded random test solutions.
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

/// Strip experiment configuration file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripConfig {
    pub graph: PathBuf,
    pub w0: Vec<usize>,
    #[serde(default = "default_radius")]
    pub radius: usize,
    /// Backward horizon; defaults to the square of the largest outer radius.
    #[serde(default)]
    pub horizon: Option<f64>,
    #[serde(default = "default_c_fraction")]
    pub c_fraction: f64,
    #[serde(default)]
    pub r: Vec<usize>,
    #[serde(default, rename = "R")]
    pub big_r: Vec<usize>,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_step")]
    pub step: f64,
}

fn default_radius() -> usize {
    12
}
fn default_c_fraction() -> f64 {
    0.9
}
fn default_k() -> usize {
    3
}
fn default_samples() -> usize {
    10
}
fn default_step() -> f64 {
    0.05
}

/// Parses `args` (including the program name), runs, and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let threads: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| Error::Parameter(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker threads: {e}")))
}

/// Destination of the artifacts of one run.
struct Output<'a> {
    dir: Option<&'a Path>,
}

impl Output<'_> {
    /// Writes `name` into the output directory, or prints it when no
    /// directory is set and `primary` holds.
    fn emit(&self, name: &str, contents: &str, primary: bool) -> Result<()> {
        match self.dir {
            Some(dir) => write_atomic(&dir.join(name), contents.as_bytes()),
            None if primary => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(contents.as_bytes())?;
                Ok(stdout.flush()?)
            }
            None => Ok(()),
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let out = Output { dir: cli.out.as_deref() };
    match &cli.command {
        Command::Graph(cmd) => graph_command(cmd, &out),
        Command::Spectrum { graph } => {
            let g = read_graph(graph)?;
            out.emit("spectrum.csv", &spectrum_csv(&full_spectrum(&g)?), true)?;
            Ok(EXIT_PASS)
        }
        Command::Dirichlet { graph, subset } => {
            let g = read_graph(graph)?;
            let w = parse_subset(&g, subset)?;
            let data = dirichlet_data(&g, &w)?;
            #[derive(Serialize)]
            struct Report<'a> {
                subset: &'a [usize],
                lambda1: f64,
                poincare_constant: f64,
                epsilon_threshold: f64,
            }
            let report = Report {
                subset: w.members(),
                lambda1: data.lambda1,
                poincare_constant: data.poincare_constant,
                epsilon_threshold: data.epsilon_threshold,
            };
            out.emit("dirichlet.json", &to_json(&report)?, true)?;
            Ok(EXIT_PASS)
        }
        Command::Evolve(args) => {
            let traj = evolve_args(args, cli.seed)?;
            out.emit("trajectory.csv", &trajectory_csv(&traj), true)?;
            out.emit("trajectory.json", &to_json(&TrajectoryMeta::new(&traj, Some(cli.seed)))?, false)?;
            Ok(EXIT_PASS)
        }
        Command::Frequency { evolve: args, trace_out } => {
            let traj = evolve_args(args, cli.seed)?;
            let trace = frequency_trace(&traj)?;
            let kappa = self_calibrated_kappa(&trace);
            let cert = check_monotonicity(&trace, kappa)?.with("seed", cli.seed);
            if let Some(path) = trace_out {
                write_atomic(path, trace_csv(&trace).as_bytes())?;
            }
            out.emit("trace.csv", &trace_csv(&trace), false)?;
            report(&out, &[cert])
        }
        Command::Verify(args) => {
            let (default_count, default_n) = match args.suite {
                Suite::Greens => (200, 40),
                _ => (100, 20),
            };
            let count = args.count.unwrap_or(default_count);
            let max_n = args.max_n.unwrap_or(default_n);
            if max_n < 2 {
                return Err(Error::Parameter("--max-n must be at least 2".into()));
            }
            let certs = match args.suite {
                Suite::Greens => suites::greens_suite(cli.seed, count, max_n, cli.tol)?,
                Suite::Poincare => suites::poincare_suite(cli.seed, count, max_n, cli.tol)?,
                Suite::Monotonicity => suites::monotonicity_suite(cli.seed, count, max_n)?,
                Suite::Harnack => suites::harnack_suite(cli.seed, count, max_n)?,
                Suite::Backward => suites::backward_suite(cli.seed, count, max_n)?,
            };
            let certs: Vec<Certificate> = certs.into_iter().map(|c| c.with("seed", cli.seed)).collect();
            report(&out, &certs)
        }
        Command::Strip(args) => strip_command(args, cli.seed, &out),
        Command::Finite {
            graph,
            modes,
            horizon,
            step,
        } => finite_command(graph, modes, *horizon, *step, &out),
    }
}

/// Prints the certificates (or writes `certificates.json`) and reports
/// failures on stderr.
fn report(out: &Output<'_>, certs: &[Certificate]) -> Result<i32> {
    out.emit("certificates.json", &certificates_json(certs)?, true)?;
    let failed: Vec<&Certificate> = certs.iter().filter(|c| !c.passed).collect();
    for c in &failed {
        eprintln!("certificate failed: {}", serde_json::to_string(c)?);
    }
    Ok(if failed.is_empty() { EXIT_PASS } else { EXIT_CERTIFICATE })
}

fn graph_command(cmd: &GraphCommand, out: &Output<'_>) -> Result<i32> {
    match cmd {
        GraphCommand::Info { graph } => {
            let g = read_graph(graph)?;
            #[derive(Serialize)]
            struct Info<'a> {
                fingerprint: String,
                vertices: usize,
                edges: usize,
                labels: &'a [String],
                mu: &'a [f64],
                diameter: usize,
            }
            let info = Info {
                fingerprint: format!("{:016x}", g.id()),
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                labels: g.labels(),
                mu: g.mu(),
                diameter: g.diameter(&VertexSubset::all(&g))?,
            };
            out.emit("graph_info.json", &to_json(&info)?, true)?;
        }
        GraphCommand::Product { first, second, p, q } => {
            let g = cartesian_product(&read_graph(first)?, &read_graph(second)?, *p, *q)?;
            out.emit("product.graph", &emit_graph(&g), true)?;
        }
        GraphCommand::Strip { base, radius } => {
            let s = strip_truncation(&read_graph(base)?, *radius)?;
            out.emit("strip.graph", &emit_graph(s.graph()), true)?;
        }
    }
    Ok(EXIT_PASS)
}

fn parse_list<T: std::str::FromStr>(spec: &str, what: &str) -> Result<Vec<T>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Parameter(format!("invalid {what} `{s}`")))
        })
        .collect()
}

fn parse_subset(g: &WeightedGraph, spec: &str) -> Result<VertexSubset> {
    VertexSubset::new(g, parse_list::<usize>(spec, "vertex index")?)
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Parameter(format!("grid must read start:end:steps, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let end: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if steps == 0 || !(start < end) || !start.is_finite() || !end.is_finite() {
        return Err(bad());
    }
    Ok(uniform_grid(start, end, steps))
}

fn parse_values(g: &WeightedGraph, spec: &str, what: &str) -> Result<VertexFunction> {
    let values: Vec<f64> = parse_list(spec, what)?;
    match values.len() {
        1 => Ok(VertexFunction::constant(g, values[0])),
        _ => VertexFunction::new(g, values),
    }
}

fn evolve_args(args: &EvolveArgs, seed: u64) -> Result<crate::heat::Trajectory> {
    let g = Arc::new(read_graph(&args.graph)?);
    let c = parse_values(&g, &args.c, "coefficient")?;
    let grid = parse_grid(&args.grid)?;
    let support = match &args.subset {
        Some(spec) => parse_subset(&g, spec)?,
        None => VertexSubset::all(&g),
    };
    let u0 = if args.u0.trim() == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        VertexFunction::random_supported(&support, &mut rng)
    } else {
        let values: Vec<f64> = parse_list(&args.u0, "initial value")?;
        VertexFunction::new(&g, values)?
    };
    let problem = HeatProblem::new(
        g,
        support,
        Coefficient::Static(c),
        (f64::NEG_INFINITY, f64::INFINITY),
    )?;
    evolve(&problem, &u0, &grid)
}

fn finite_command(graph: &Path, modes: &str, horizon: f64, step: f64, out: &Output<'_>) -> Result<i32> {
    let g = Arc::new(read_graph(graph)?);
    let modes: Vec<(usize, f64)> = modes
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (i, a) = s
                .split_once(':')
                .ok_or_else(|| Error::Parameter(format!("mode must read index:amplitude, got `{s}`")))?;
            let i = i.trim().parse().map_err(|_| Error::Parameter(format!("invalid mode index `{i}`")))?;
            let a = a.trim().parse().map_err(|_| Error::Parameter(format!("invalid amplitude `{a}`")))?;
            Ok((i, a))
        })
        .collect::<Result<_>>()?;
    if !(horizon > 0.0 && step > 0.0) {
        return Err(Error::Parameter("horizon and step must be positive".into()));
    }
    let grid = uniform_grid(-horizon, 0.0, (horizon / step).ceil() as usize);
    let traj = ancient_from_modes(g.clone(), &modes, &grid)?;
    let growth = classify_growth(&traj)?;
    let dec = full_spectrum(&g)?;
    let mut harmonic = vec![0.0; dec.len()];
    for &(i, a) in &modes {
        if dec.eigenvalues()[i].abs() <= crate::spectral::SPECTRUM_TOL {
            harmonic[i] += a;
        }
    }
    let harmonic_part = dec.synthesize(&harmonic, 0.0);

    #[derive(Serialize)]
    struct FiniteReport {
        modes: Vec<(usize, f64, f64)>,
        class: &'static str,
        rate: Option<f64>,
        degree: Option<f64>,
        harmonic_part: Vec<f64>,
    }
    let (class, rate, degree) = match growth {
        crate::heat::GrowthClass::Exponential { rate } => ("exponential", Some(rate), None),
        crate::heat::GrowthClass::Polynomial { degree, zero } => {
            (if zero { "trivial" } else { "polynomial" }, None, Some(degree))
        }
    };
    let report = FiniteReport {
        modes: modes.iter().map(|&(i, a)| (i, dec.eigenvalues()[i], a)).collect(),
        class,
        rate,
        degree,
        harmonic_part: harmonic_part.into_values(),
    };
    out.emit("finite.json", &to_json(&report)?, true)?;
    Ok(EXIT_PASS)
}

fn strip_config(args: &StripArgs) -> Result<StripConfig> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        let mut config: StripConfig = serde_json::from_str(&text)?;
        if config.graph.is_relative() {
            if let Some(dir) = path.parent() {
                config.graph = dir.join(&config.graph);
            }
        }
        return Ok(config);
    }
    let graph = args
        .base
        .clone()
        .ok_or_else(|| Error::Parameter("strip needs a base graph or --config".into()))?;
    Ok(StripConfig {
        graph,
        w0: parse_list(&args.w0, "vertex index")?,
        radius: args.radius,
        horizon: None,
        c_fraction: args.c_fraction,
        r: args.r.as_deref().map(|s| parse_list(s, "radius")).transpose()?.unwrap_or_default(),
        big_r: args.big_r.as_deref().map(|s| parse_list(s, "radius")).transpose()?.unwrap_or_default(),
        k: args.k,
        samples: args.samples,
        step: args.step,
    })
}

/// Calibrates the reverse Poincaré constant on the fixed family, certifies it
/// on seeded random solutions for every requested `(r, R)`, checks iteration
/// growth and truncation sensitivity, and runs the dichotomy report.
fn strip_command(args: &StripArgs, seed: u64, out: &Output<'_>) -> Result<i32> {
    let config = strip_config(args)?;
    let base = read_graph(&config.graph)?;
    let w0 = VertexSubset::new(&base, config.w0.iter().copied())?;
    let experiment = StripExperiment::new(&base, &w0, config.radius)?;
    let max_r = config.radius.saturating_sub(TRUNCATION_MARGIN);
    let pairs: Vec<(usize, usize)> = radius_pairs(max_r, 2)
        .into_iter()
        .filter(|(r, big_r)| {
            (config.r.is_empty() || config.r.contains(r)) && (config.big_r.is_empty() || config.big_r.contains(big_r))
        })
        .collect();
    if pairs.is_empty() {
        return Err(Error::Parameter(format!(
            "no (r, R) pair with R − r ≥ 2 and R ≤ radius − {TRUNCATION_MARGIN}"
        )));
    }
    let outer = pairs.iter().map(|p| p.1).max().unwrap_or(1);
    let horizon = config.horizon.unwrap_or((outer * outer) as f64);
    if !(config.step > 0.0 && config.step <= 0.05) {
        return Err(Error::Parameter(format!("step must lie in (0, 0.05], got {}", config.step)));
    }
    let c = config.c_fraction * experiment.epsilon();
    let grid = uniform_grid(-horizon, 0.0, (horizon / config.step).ceil() as usize);

    let family = calibration_family(&experiment, c, &grid)?;
    let calibration = calibrate_constant(&experiment, &family, &pairs)?;
    let r0 = iteration_step(calibration.constant);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tests: Vec<_> = (0..config.samples)
        .map(|_| {
            let data = VertexFunction::random_supported(experiment.support(), &mut rng);
            experiment.solve(c, &data, grid[0], &grid)
        })
        .collect::<Result<_>>()?;

    let mut certs = Vec::new();
    let mut rows = Vec::new();
    for (i, traj) in tests.iter().enumerate() {
        for &(r, big_r) in &pairs {
            let cert = experiment
                .reverse_poincare_certificate(traj, r, big_r, calibration.constant)?
                .with("solution", i)
                .with("seed", seed);
            rows.push(QRow {
                solution: i,
                r,
                big_r,
                q_r: cert.observed,
                q_big_r: q_mass(traj, &experiment.window(big_r)?)?,
                ratio: cert.context["ratio"].parse().unwrap_or(f64::NAN),
            });
            certs.push(cert);
        }
        let start = pairs.iter().map(|p| p.0).min().unwrap_or(1);
        if start + config.k * r0 <= config.radius {
            certs.push(
                experiment
                    .iteration_growth_certificate(traj, start, r0, config.k)?
                    .with("solution", i)
                    .with("seed", seed),
            );
        }
    }
    certs.push(sensitivity_certificate(&base, &w0, &experiment, c, &grid, outer)?);

    let dichotomy = strip_dichotomy_experiment(
        &base,
        &w0,
        config.radius,
        horizon,
        &DichotomyConfig {
            c,
            degree: 2,
            r: 1,
            step: config.step,
        },
    )?;
    out.emit("q_table.csv", &q_table_csv(&rows), false)?;
    out.emit("dichotomy.json", &dichotomy_json(&dichotomy, Some(seed))?, false)?;
    report(out, &certs)
}

/// Relative change of `∫_{Q_r}u²` for a centred point source when the
/// truncation radius grows by [`TRUNCATION_MARGIN`].
fn sensitivity_certificate(
    base: &WeightedGraph,
    w0: &VertexSubset,
    experiment: &StripExperiment,
    c: f64,
    grid: &[f64],
    outer: usize,
) -> Result<Certificate> {
    let wider = StripExperiment::new(base, w0, experiment.strip().radius() + TRUNCATION_MARGIN)?;
    let w = w0.members()[0];
    let a = experiment.solve(c, &experiment.point_source(w, 0)?, grid[0], grid)?;
    let b = wider.solve(c, &wider.point_source(w, 0)?, grid[0], grid)?;
    let mut worst = 0.0f64;
    for r in 1..=outer {
        let qa = q_mass(&a, &experiment.window(r)?)?;
        let qb = q_mass(&b, &wider.window(r)?)?;
        if qb > 0.0 {
            worst = worst.max((qa - qb).abs() / qb);
        }
    }
    Ok(Certificate::upper("truncation_sensitivity", 0.01, worst, 0.0)
        .with("radius", experiment.strip().radius())
        .with("wider_radius", wider.strip().radius()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_specs() {
        assert_eq!(parse_grid("0:1:4").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(parse_grid("1:0:4").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["caloric", "no-such-command"]), EXIT_USAGE);
        assert_eq!(run(["caloric", "spectrum", "/nonexistent/file"]), EXIT_USAGE);
    }
}
