//! Command-line front end: exact extremal-function computation, fixed-point
//! solving, defect measurement and certification, witness generation, graph
//! sampling, and stability analysis.
//!
//! Exit codes: 0 on success, 1 on validation errors (bad flags, malformed
//! inputs), 2 on numeric or certificate failures (a measured quantity
//! breaking its certified bound).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use approx_convex::dyadic::{DyadicRational, DyadicSimplexPoint};
use approx_convex::extremal::{
    e_point, h_dyadic, h_enclose, kappa, EvalMode, ExtremalValue, KappaTable,
};
use approx_convex::geometry::{
    certify_hull_point, hull_defect_estimate, witness_set, DefectReport, HullCertificate, Norm,
    PolyhedralNorm, PointSet, Sampler, WitnessPoints,
};
use approx_convex::io::{format_rational, parse_rational, parse_rational_list, rational_to_f64};
use approx_convex::solver::{
    polytope_extremal, solve_lower, solve_upper, DyadicGrid, LowerSeed, PolytopeSpec,
};
use approx_convex::stability::{stability_report, SampledFunction};

/// Failure carrying the process exit code.
enum Failure {
    /// Bad flags or malformed input files; exits 1.
    Usage(String),
    /// A computation violated its own certified bound; exits 2.
    Certificate(String),
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure::Usage(message.into())
    }

    fn certificate(message: impl Into<String>) -> Self {
        Failure::Certificate(message.into())
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Parser)]
#[command(
    name = "approx-convex",
    version,
    about = "Extremal approximately convex functions and sharp hull-defect bounds",
    after_help = "Exit codes: 0 success, 1 validation error, 2 numeric/certificate failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the extremal constant kappa for one n or a range `a..b`.
    Kappa(KappaArgs),
    /// Evaluate h (one coordinate) or e (simplex coordinates).
    Eval(EvalArgs),
    /// Relax the sandwich iterations to the extremal fixed point.
    Solve(SolveArgs),
    /// Measure a point set's midpoint defect; optionally estimate and
    /// certify its hull defect.
    Defect(DefectArgs),
    /// Generate a near-extremal witness sample and measure it.
    Witness(WitnessArgs),
    /// Emit graph samples of h or of the two-variable e surface as CSV.
    Plot(PlotArgs),
    /// Bound a sampled function's distance to convexity.
    Stability(StabilityArgs),
}

#[derive(Args)]
struct KappaArgs {
    /// A single n, or an inclusive range `a..b`.
    spec: String,
}

#[derive(Args)]
struct EvalArgs {
    /// Which function: `h` takes one coordinate, `e` takes simplex
    /// coordinates summing to one.
    function: String,
    /// Coordinates as exact rationals (`p/q`, integers, or decimals).
    #[arg(required = true)]
    coordinates: Vec<String>,
    /// Series precision for enclosures at non-dyadic inputs.
    #[arg(long, default_value_t = 30)]
    depth: u32,
}

#[derive(Args)]
struct SolveArgs {
    /// Solve on the standard simplex with this many ambient dimensions
    /// (n + 1 barycentric coordinates).
    #[arg(long, conflicts_with = "polytope")]
    simplex: Option<usize>,
    /// Solve on the polytope described by this JSON file
    /// (`{"vertices": [["0","0"], ...], "phi": ["0", ...]}`).
    #[arg(long, required_unless_present = "simplex")]
    polytope: Option<PathBuf>,
    /// Dyadic grid depth (simplex mode) or enclosure depth (polytope mode).
    #[arg(long)]
    depth: u32,
    /// Boundary values at the simplex vertices, comma separated; defaults
    /// to zeros.
    #[arg(long)]
    phi: Option<String>,
    /// Query point for polytope mode, comma separated.
    #[arg(long)]
    query: Option<String>,
    /// Write the grid CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DefectArgs {
    /// Point-set JSON file: `{"dim": n, "points": [[...], ...]}`.
    #[arg(long)]
    points: PathBuf,
    /// Norm: euclidean | l1 | linf | lp:P | poly:FILE.
    #[arg(long, default_value = "euclidean")]
    norm: String,
    /// Hull-defect sampler: `grid:RESOLUTION` or `random:COUNT`.
    #[arg(long)]
    sampler: Option<String>,
    /// Seed for the random sampler (required with `random:`).
    #[arg(long)]
    seed: Option<u64>,
    /// Also certify the worst sampled hull point against the extremal
    /// bound.
    #[arg(long, requires = "sampler")]
    certify: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Number of barycentric coordinates (at least 2).
    #[arg(long)]
    dim: usize,
    /// The barycentric point alpha, comma-separated dyadic rationals.
    #[arg(long)]
    alpha: String,
    /// Horizontal scale of the base simplex.
    #[arg(long = "M", alias = "m-scale")]
    m_scale: f64,
    /// Dyadic depth of the column grid.
    #[arg(long)]
    depth: u32,
    /// Norm: euclidean | l1 | linf | lp:P | poly:FILE.
    #[arg(long, default_value = "euclidean")]
    norm: String,
    /// Largest acceptable shortfall of the measured ratio below the target.
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the sample points as CSV (requires the sample to be small
    /// enough to materialize).
    #[arg(long)]
    points_file: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Which graph: `h` (with its bounding curves) or `e2d`.
    graph: String,
    /// Number of grid steps; must be a power of two.
    #[arg(long)]
    resolution: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StabilityArgs {
    /// Sample CSV: one row per point, coordinates then the value, all exact
    /// rationals; an optional header row is skipped.
    #[arg(long)]
    samples: PathBuf,
    /// The promised midpoint slack epsilon, an exact rational.
    #[arg(long)]
    eps: String,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Kappa(args) => cmd_kappa(&args),
        Command::Eval(args) => cmd_eval(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::Defect(args) => cmd_defect(&args),
        Command::Witness(args) => cmd_witness(&args),
        Command::Plot(args) => cmd_plot(&args),
        Command::Stability(args) => cmd_stability(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Certificate(message)) => {
            eprintln!("certificate failure: {message}");
            ExitCode::from(2)
        }
    }
}

/// Writes `content` to `output`, or to stdout when no path was given.
fn emit(output: Option<&Path>, content: &str) -> CmdResult {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::usage(format!("cannot serialize report: {e}")))
}

/// Parses a norm flag: a name (`euclidean`, `l1`, `linf`, `lp:P`) or
/// `poly:FILE` pointing at a polyhedral-norm JSON file.
fn parse_norm_flag(spec: &str) -> Result<Norm, Failure> {
    if let Some(path) = spec.strip_prefix("poly:") {
        let text = read_file(Path::new(path))?;
        let ball: PolyhedralNorm = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("bad polyhedral norm in {path}: {e}")))?;
        return Ok(Norm::Polyhedral(ball));
    }
    Norm::parse_name(spec).map_err(|e| Failure::usage(format!("bad --norm: {e}")))
}

fn parse_rationals_flag(text: &str, what: &str) -> Result<Vec<BigRational>, Failure> {
    let values = parse_rational_list(text).map_err(|e| Failure::usage(format!("{what}: {e}")))?;
    if values.is_empty() {
        return Err(Failure::usage(format!("{what}: empty list")));
    }
    Ok(values)
}

fn cmd_kappa(args: &KappaArgs) -> CmdResult {
    let spec = args.spec.trim();
    let (lo, hi) = match spec.split_once("..") {
        Some((a, b)) => {
            let lo: u64 = a
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad range start {a:?}")))?;
            let hi: u64 = b
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad range end {b:?}")))?;
            if lo > hi {
                return Err(Failure::usage(format!("empty range {spec:?}")));
            }
            (lo, hi)
        }
        None => {
            let n: u64 = spec
                .parse()
                .map_err(|_| Failure::usage(format!("bad argument {spec:?}: give n or a..b")))?;
            (n, n)
        }
    };
    let table = KappaTable::new(lo, hi);
    println!("{:<12}{:<16}{}", "n", "kappa", "decimal");
    for (n, value) in table.rows() {
        println!(
            "{:<12}{:<16}{}",
            n,
            format_rational(value),
            rational_to_f64(value)
        );
    }
    Ok(())
}

fn cmd_eval(args: &EvalArgs) -> CmdResult {
    let coords: Vec<BigRational> = args
        .coordinates
        .iter()
        .map(|c| parse_rational(c).map_err(|e| Failure::usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    let rendered: Vec<String> = coords.iter().map(format_rational).collect();
    let label = format!("{}({})", args.function, rendered.join(", "));
    match args.function.as_str() {
        "h" => {
            if coords.len() != 1 {
                return Err(Failure::usage("h takes exactly one coordinate"));
            }
            let x = &coords[0];
            if x.is_negative() || x > &BigRational::from_integer(1.into()) {
                return Err(Failure::usage("h needs a coordinate in [0, 1]"));
            }
            match DyadicRational::from_rational(x) {
                Ok(d) => print_exact(&label, &h_dyadic(&d)),
                Err(_) => {
                    let enclosure = h_enclose(x, args.depth)
                        .map_err(|e| Failure::usage(e.to_string()))?;
                    print_enclosure(&label, enclosure.lo(), enclosure.hi());
                }
            }
            Ok(())
        }
        "e" => {
            let all_dyadic = coords
                .iter()
                .all(|c| DyadicRational::from_rational(c).is_ok());
            let mode = if all_dyadic {
                EvalMode::Exact
            } else {
                EvalMode::Enclose {
                    precision: args.depth,
                }
            };
            let value = e_point(&coords, mode).map_err(|e| Failure::usage(e.to_string()))?;
            match value {
                ExtremalValue::Exact(v) => print_exact(&label, &v),
                ExtremalValue::Enclosed(enclosure) => {
                    print_enclosure(&label, enclosure.lo(), enclosure.hi())
                }
            }
            Ok(())
        }
        other => Err(Failure::usage(format!(
            "unknown function {other:?}: expected h or e"
        ))),
    }
}

fn print_exact(label: &str, value: &BigRational) {
    println!("{label} = {} (exact)", format_rational(value));
    println!("decimal: {}", rational_to_f64(value));
}

fn print_enclosure(label: &str, lo: &BigRational, hi: &BigRational) {
    println!(
        "{label} in [{}, {}]",
        format_rational(lo),
        format_rational(hi)
    );
    println!(
        "decimal: [{}, {}] width {}",
        rational_to_f64(lo),
        rational_to_f64(hi),
        rational_to_f64(&(hi - lo))
    );
}

fn cmd_solve(args: &SolveArgs) -> CmdResult {
    match (&args.simplex, &args.polytope) {
        (Some(dim), None) => solve_simplex(*dim, args),
        (None, Some(path)) => solve_polytope(path, args),
        _ => Err(Failure::usage("give exactly one of --simplex or --polytope")),
    }
}

fn solve_simplex(dim: usize, args: &SolveArgs) -> CmdResult {
    if args.query.is_some() {
        return Err(Failure::usage("--query applies to --polytope mode only"));
    }
    let grid = DyadicGrid::new(dim, args.depth).map_err(|e| Failure::usage(e.to_string()))?;
    let phi = match &args.phi {
        Some(text) => {
            let values = parse_rationals_flag(text, "--phi")?;
            if values.len() != dim + 1 {
                return Err(Failure::usage(format!(
                    "--phi needs {} values, got {}",
                    dim + 1,
                    values.len()
                )));
            }
            values
        }
        None => vec![BigRational::zero(); dim + 1],
    };
    let upper =
        solve_upper(&grid, &phi, None).map_err(|e| Failure::usage(e.to_string()))?;
    let lower = solve_lower(&grid, &phi, LowerSeed::Affine, None)
        .map_err(|e| Failure::usage(e.to_string()))?;
    eprintln!(
        "upper relaxation: {} after {} sweeps",
        if upper.converged { "converged" } else { "stopped" },
        upper.iterations
    );
    eprintln!(
        "lower relaxation: {} after {} sweeps",
        if lower.converged { "converged" } else { "stopped" },
        lower.iterations
    );
    let mut csv = String::new();
    let coord_headers: Vec<String> = (0..=dim).map(|k| format!("x{k}")).collect();
    let _ = writeln!(csv, "{},upper,lower,agree", coord_headers.join(","));
    let mut mismatches = 0usize;
    for (i, point) in grid.points().iter().enumerate() {
        let up = upper.function.value(i);
        let low = lower.function.value(i);
        let agree = up == low;
        if !agree {
            mismatches += 1;
        }
        let coords: Vec<String> = point
            .rational_coords()
            .iter()
            .map(|c| format_rational(c))
            .collect();
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            coords.join(","),
            format_rational(up),
            format_rational(low),
            agree
        );
    }
    eprintln!(
        "agreement: {} of {} grid points match exactly",
        grid.len() - mismatches,
        grid.len()
    );
    emit(args.output.as_deref(), &csv)?;
    if !upper.converged || !lower.converged {
        return Err(Failure::certificate(
            "a relaxation hit its sweep cap before reaching a fixed point",
        ));
    }
    if mismatches > 0 {
        return Err(Failure::certificate(format!(
            "sandwich fixed points disagree at {mismatches} grid points"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct PolytopeQueryReport {
    query: Vec<String>,
    lo: String,
    hi: String,
    lo_f64: f64,
    hi_f64: f64,
    width_f64: f64,
}

fn solve_polytope(path: &Path, args: &SolveArgs) -> CmdResult {
    let spec: PolytopeSpec = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Failure::usage(format!("bad polytope file {}: {e}", path.display())))?;
    let Some(query_text) = &args.query else {
        return Err(Failure::usage("--polytope mode needs --query X,Y,..."));
    };
    let query = parse_rationals_flag(query_text, "--query")?;
    if args.phi.is_some() {
        return Err(Failure::usage(
            "boundary values for a polytope live in its JSON file, not --phi",
        ));
    }
    let enclosure = polytope_extremal(&spec, &query, args.depth)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let report = PolytopeQueryReport {
        query: query.iter().map(format_rational).collect(),
        lo: format_rational(enclosure.lo()),
        hi: format_rational(enclosure.hi()),
        lo_f64: rational_to_f64(enclosure.lo()),
        hi_f64: rational_to_f64(enclosure.hi()),
        width_f64: rational_to_f64(&enclosure.width()),
    };
    emit(args.output.as_deref(), &to_json(&report)?)
}

#[derive(Serialize)]
struct EstimateReport {
    sampler: String,
    value: f64,
    argmax: Vec<f64>,
    samples: u64,
    within_bound: bool,
}

#[derive(Serialize)]
struct DefectCommandReport {
    #[serde(flatten)]
    defect: DefectReport,
    bound_constant: String,
    bound_constant_f64: f64,
    certified_upper_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate: Option<EstimateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<HullCertificate>,
}

fn parse_sampler_flag(spec: &str, seed: Option<u64>) -> Result<Sampler, Failure> {
    let Some((kind, value)) = spec.split_once(':') else {
        return Err(Failure::usage(format!(
            "bad --sampler {spec:?}: expected grid:RESOLUTION or random:COUNT"
        )));
    };
    match kind {
        "grid" => {
            let resolution: f64 = value
                .parse()
                .map_err(|_| Failure::usage(format!("bad grid resolution {value:?}")))?;
            Ok(Sampler::Grid { resolution })
        }
        "random" => {
            let count: u64 = value
                .parse()
                .map_err(|_| Failure::usage(format!("bad sample count {value:?}")))?;
            let Some(seed) = seed else {
                return Err(Failure::usage("random sampling needs an explicit --seed"));
            };
            Ok(Sampler::Random { seed, count })
        }
        other => Err(Failure::usage(format!(
            "unknown sampler {other:?}: expected grid or random"
        ))),
    }
}

fn cmd_defect(args: &DefectArgs) -> CmdResult {
    let set: PointSet = serde_json::from_str(&read_file(&args.points)?).map_err(|e| {
        Failure::usage(format!("bad point set {}: {e}", args.points.display()))
    })?;
    let norm = parse_norm_flag(&args.norm)?;
    if let Some(required) = norm.required_dim() {
        if required != set.dim() {
            return Err(Failure::usage(format!(
                "norm lives in dimension {required}, points in {}",
                set.dim()
            )));
        }
    }
    let defect = DefectReport::measure(&set, &norm);
    // The sharp constant for sets in R^d is kappa(d - 1) for the Euclidean
    // norm when d >= 2, and at most kappa(d) in general. On the line the
    // d - 1 form degenerates (kappa(0) = 0 certifies nothing), so every
    // norm falls back to the general kappa(1) bound there.
    let constant_arg = match norm {
        Norm::Euclidean if set.dim() >= 2 => (set.dim() - 1) as u64,
        _ => set.dim() as u64,
    };
    let constant = kappa(constant_arg);
    let certified_upper_bound = rational_to_f64(&constant) * defect.delta;
    let mut report = DefectCommandReport {
        bound_constant: format_rational(&constant),
        bound_constant_f64: rational_to_f64(&constant),
        certified_upper_bound,
        defect,
        estimate: None,
        certificate: None,
    };
    if let Some(sampler_text) = &args.sampler {
        let sampler = parse_sampler_flag(sampler_text, args.seed)?;
        let estimate = hull_defect_estimate(&set, &norm, &sampler)
            .map_err(|e| Failure::usage(e.to_string()))?;
        let within = estimate.value
            <= certified_upper_bound + approx_convex::tolerances::GEOMETRY;
        if args.certify {
            let certificate =
                certify_hull_point(&estimate.argmax, &set, &norm, Some(report.defect.delta))
                    .map_err(|e| Failure::certificate(e.to_string()))?;
            report.certificate = Some(certificate);
        }
        report.estimate = Some(EstimateReport {
            sampler: sampler_text.clone(),
            value: estimate.value,
            argmax: estimate.argmax,
            samples: estimate.samples,
            within_bound: within,
        });
    }
    emit(args.output.as_deref(), &to_json(&report)?)?;
    if let Some(estimate) = &report.estimate {
        if !estimate.within_bound {
            return Err(Failure::certificate(format!(
                "sampled hull defect {} exceeds the certified bound {certified_upper_bound}",
                estimate.value
            )));
        }
    }
    if let Some(certificate) = &report.certificate {
        if !certificate.pass {
            return Err(Failure::certificate(format!(
                "hull-point certificate failed: dist {} > bound {}",
                certificate.dist, certificate.bound
            )));
        }
    }
    Ok(())
}

fn cmd_witness(args: &WitnessArgs) -> CmdResult {
    let norm = parse_norm_flag(&args.norm)?;
    let coords = parse_rationals_flag(&args.alpha, "--alpha")?;
    let dyadic: Vec<DyadicRational> = coords
        .iter()
        .map(DyadicRational::from_rational)
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(format!("--alpha: {e}")))?;
    let alpha =
        DyadicSimplexPoint::new(dyadic).map_err(|e| Failure::usage(format!("--alpha: {e}")))?;
    let witness = witness_set(&norm, args.dim, &alpha, args.eps, args.m_scale, args.depth)
        .map_err(|e| match e {
            approx_convex::geometry::GeometryError::InsufficientScale { .. }
            | approx_convex::geometry::GeometryError::Numeric { .. } => {
                Failure::certificate(e.to_string())
            }
            other => Failure::usage(other.to_string()),
        })?;
    if let Some(points_path) = &args.points_file {
        match &witness.points {
            WitnessPoints::Explicit { set } => {
                let mut csv = String::new();
                let headers: Vec<String> = (0..set.dim()).map(|k| format!("x{k}")).collect();
                let _ = writeln!(csv, "{}", headers.join(","));
                for point in set.points() {
                    let cells: Vec<String> = point.iter().map(|c| format!("{c}")).collect();
                    let _ = writeln!(csv, "{}", cells.join(","));
                }
                fs::write(points_path, csv).map_err(|e| {
                    Failure::usage(format!("cannot write {}: {e}", points_path.display()))
                })?;
            }
            WitnessPoints::Implicit {
                total_points,
                explicit_limit,
                ..
            } => {
                return Err(Failure::usage(format!(
                    "sample holds {total_points} points, beyond the explicit limit \
                     {explicit_limit}; lower --depth or drop --points-file"
                )));
            }
        }
    }
    emit(args.output.as_deref(), &to_json(&witness)?)
}

fn cmd_plot(args: &PlotArgs) -> CmdResult {
    if args.resolution == 0 || !args.resolution.is_power_of_two() {
        return Err(Failure::usage(format!(
            "--resolution {} must be a positive power of two",
            args.resolution
        )));
    }
    let depth = args.resolution.trailing_zeros();
    if depth > 24 {
        return Err(Failure::usage("--resolution beyond 2^24 is not supported"));
    }
    match args.graph.as_str() {
        "h" => plot_h(args, depth),
        "e2d" => plot_e2d(args, depth),
        other => Err(Failure::usage(format!(
            "unknown graph {other:?}: expected h or e2d"
        ))),
    }
}

/// Lower bounding curve of the h graph: x * log2(1/x), extended by 0 at 0.
/// Nonnegative on [0, 1], so the sign of a rounded zero is normalized.
fn h_lower_curve(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (-x * x.log2()).max(0.0)
    }
}

/// Upper bounding curve of the h graph: 2x + log2(1/x); infinite at 0.
fn h_upper_curve(x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else {
        2.0 * x - x.log2()
    }
}

fn plot_h(args: &PlotArgs, depth: u32) -> CmdResult {
    let resolution = args.resolution;
    let mut csv = String::from("x,x_decimal,h,h_decimal,lower_bound,upper_bound\n");
    for i in 0..=resolution {
        let x = DyadicRational::new(i.into(), depth)
            .map_err(|e| Failure::usage(e.to_string()))?;
        let value = h_dyadic(&x);
        let x_f64 = i as f64 / resolution as f64;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            format_rational(&x.value()),
            x_f64,
            format_rational(&value),
            rational_to_f64(&value),
            h_lower_curve(x_f64),
            h_upper_curve(x_f64)
        );
    }
    emit(args.output.as_deref(), &csv)
}

fn plot_e2d(args: &PlotArgs, depth: u32) -> CmdResult {
    let resolution = args.resolution as u128;
    let mut csv = String::from("x,y,e,e_decimal\n");
    for i in 0..=resolution {
        for j in 0..=(resolution - i) {
            let point =
                DyadicSimplexPoint::from_numerators(&[i, j, resolution - i - j], depth)
                    .map_err(|e| Failure::usage(e.to_string()))?;
            let coords = point.rational_coords();
            let value = approx_convex::extremal::e_dyadic(&point);
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                format_rational(&coords[0]),
                format_rational(&coords[1]),
                format_rational(&value),
                rational_to_f64(&value)
            );
        }
    }
    emit(args.output.as_deref(), &csv)
}

fn cmd_stability(args: &StabilityArgs) -> CmdResult {
    let epsilon =
        parse_rational(&args.eps).map_err(|e| Failure::usage(format!("--eps: {e}")))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(&args.samples)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.samples.display())))?;
    let mut points = Vec::new();
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| Failure::usage(format!("bad CSV row {}: {e}", row + 1)))?;
        let cells: Vec<&str> = record.iter().filter(|c| !c.is_empty()).collect();
        if cells.is_empty() {
            continue;
        }
        let parsed: Result<Vec<BigRational>, _> =
            cells.iter().map(|c| parse_rational(c)).collect();
        match parsed {
            Ok(mut numbers) => {
                if numbers.len() < 2 {
                    return Err(Failure::usage(format!(
                        "row {} needs at least one coordinate and a value",
                        row + 1
                    )));
                }
                let value = numbers.pop().expect("checked length");
                points.push(numbers);
                values.push(value);
            }
            Err(e) => {
                if row == 0 {
                    continue; // header row
                }
                return Err(Failure::usage(format!("bad CSV row {}: {e}", row + 1)));
            }
        }
    }
    let sample = SampledFunction::new(points, values, epsilon)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let report = stability_report(&sample).map_err(|e| Failure::certificate(e.to_string()))?;
    emit(args.output.as_deref(), &to_json(&report)?)?;
    if !report.pass {
        return Err(Failure::certificate(format!(
            "gap {} exceeds the certified bound {}",
            report.sup_gap_f64,
            rational_to_f64(&report.bound)
        )));
    }
    Ok(())
}
