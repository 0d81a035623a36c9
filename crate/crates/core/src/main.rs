//! Command-line front end: every library operation behind one binary, plus
//! the `reproduce` command that regenerates the full reference table.
//!
//! The binary holds no numeric logic of its own; each subcommand parses
//! flags, calls exactly one library operation, and serialises the result.

use std::error::Error;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cqdyn::classes::{stable_membership, unstable_membership, Certificate, MembershipVerdict};
use cqdyn::dynamics::{
    check_expansive, orbit_trace, translation_orbit, OrbitTrace, SeparationDirection,
    SeparationResult,
};
use cqdyn::entropy::{entropy_estimate, CoverMode, Variant};
use cqdyn::funcspace::ComplexityFunction;
use cqdyn::hierarchy::{gap_check, hierarchy_separation, GapVerdict, DEFAULT_GAP_POINTS};
use cqdyn::qmetric::{dc, dc_conjugate, dc_sym, partial_sums, DEFAULT_TRUNCATION};
use cqdyn::report::reproduction_report;

#[derive(Parser)]
#[command(
    name = "cqdyn",
    version,
    about = "Quasi-metric geometry of running-time functions: distances, \
             scaling orbits, stability classes, growth gaps, and entropy \
             estimates."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Series distance from one running-time function to another
    Dist(DistArgs),
    /// Distances along the scaling orbit k -> (alpha^k f, alpha^k g)
    Orbit(OrbitArgs),
    /// Scan the orbit for an iterate separating the pair beyond delta
    Expansive(ExpansiveArgs),
    /// Membership of g in the stable delta-class of f
    Stable(StableArgs),
    /// Membership of g in the unstable class of f
    Unstable(UnstableArgs),
    /// Symmetrized-distance separation scan for a hierarchy pair
    Separation(SeparationArgs),
    /// Gap check: does f ln f / g tend to zero along doubling sample points?
    Hierarchy(HierarchyArgs),
    /// Spanning counts and entropy slopes of a finite function set
    Entropy(EntropyArgs),
    /// Recompute every reference value and report PASS/FAIL per row
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Cost of moving from f down to g
    Forward,
    /// The reversed distance dc(g, f)
    Conjugate,
    /// Larger of the two directions
    Sym,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Forward,
    TwoSided,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoverArg {
    Greedy,
    Exact,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Write the result to this path instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistArgs {
    /// Source expression, e.g. "n^2"
    #[arg(short = 'f', long = "f", value_name = "EXPR")]
    f: String,
    /// Target expression, e.g. "n"
    #[arg(short = 'g', long = "g", value_name = "EXPR")]
    g: String,
    /// Series truncation
    #[arg(long = "N", value_name = "INT", default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    /// Which direction of the distance to compute
    #[arg(long, value_enum, default_value_t = Direction::Forward)]
    direction: Direction,
    /// Print the first INT partial sums instead of the truncated series
    #[arg(long, value_name = "INT")]
    sums: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(short = 'f', long = "f", value_name = "EXPR")]
    f: String,
    #[arg(short = 'g', long = "g", value_name = "EXPR")]
    g: String,
    /// Scale factor of the orbit
    #[arg(long, value_name = "R", default_value_t = 2.0)]
    alpha: f64,
    /// First iterate (may be negative)
    #[arg(long = "kmin", value_name = "INT", default_value_t = 0, allow_negative_numbers = true)]
    k_min: i32,
    /// Last iterate
    #[arg(long = "kmax", value_name = "INT", default_value_t = 10, allow_negative_numbers = true)]
    k_max: i32,
    /// Follow the translation orbit f + c*k instead of the scaling orbit
    #[arg(long, value_name = "R", conflicts_with_all = ["alpha", "k_min"])]
    translate: Option<f64>,
    #[arg(long = "N", value_name = "INT", default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExpansiveArgs {
    #[arg(short = 'f', long = "f", value_name = "EXPR")]
    f: String,
    #[arg(short = 'g', long = "g", value_name = "EXPR")]
    g: String,
    #[arg(long, value_name = "R", default_value_t = 2.0)]
    alpha: f64,
    /// Separation threshold
    #[arg(long, value_name = "R", default_value_t = 0.1)]
    delta: f64,
    /// Largest iterate magnitude to scan
    #[arg(long = "M", value_name = "INT", default_value_t = 50)]
    scan_bound: u32,
    #[arg(long = "N", value_name = "INT", default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct StableArgs {
    /// Reference function whose stable class is queried
    #[arg(short = 'f', long = "f", value_name = "EXPR")]
    f: String,
    /// Candidate member
    #[arg(short = 'g', long = "g", value_name = "EXPR")]
    g: String,
    #[arg(long, value_name = "R", default_value_t = 2.0)]
    alpha: f64,
    /// Class tolerance
    #[arg(long, value_name = "R", default_value_t = 0.1)]
    delta: f64,
    /// Forward iterates to scan when cross-checking the criterion
    #[arg(long = "M", value_name = "INT", default_value_t = 50)]
    scan_bound: u32,
    #[arg(long = "N", value_name = "INT", default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct UnstableArgs {
    /// Reference function whose unstable class is queried
    #[arg(short = 'f', long = "f", value_name = "EXPR")]
    f: String,
    /// Candidate member
    #[arg(short = 'g', long = "g", value_name = "EXPR")]
    g: String,
    /// Dominance horizon: indices 1..=M are checked pointwise
    #[arg(long = "M", value_name = "INT", default_value_t = 50)]
    horizon: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SeparationArgs {
    #[arg(short = 'f', long = "f", value_name = "EXPR")]
    f: String,
    #[arg(short = 'g', long = "g", value_name = "EXPR")]
    g: String,
    #[arg(long, value_name = "R", default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, value_name = "R", default_value_t = 0.1)]
    delta: f64,
    /// Largest iterate magnitude to scan
    #[arg(long = "M", value_name = "INT", default_value_t = 50)]
    scan_bound: u32,
    #[arg(long = "N", value_name = "INT", default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HierarchyArgs {
    /// Lower function of the pair
    #[arg(short = 'f', long = "f", value_name = "EXPR")]
    f: String,
    /// Upper function of the pair
    #[arg(short = 'g', long = "g", value_name = "EXPR")]
    g: String,
    /// Number of doubling sample points 2^1, 2^2, ...
    #[arg(long = "nmax", value_name = "INT", default_value_t = DEFAULT_GAP_POINTS)]
    n_points: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EntropyArgs {
    /// Member of the function set; repeat the flag for each member
    #[arg(short = 'f', long = "f", value_name = "EXPR", required = true)]
    f: Vec<String>,
    #[arg(long, value_name = "R", default_value_t = 2.0)]
    alpha: f64,
    /// Spanning radius
    #[arg(long, value_name = "R", default_value_t = 0.5)]
    epsilon: f64,
    /// Largest iteration depth for the count sequence
    #[arg(long = "nmax", value_name = "INT", default_value_t = 8)]
    n_max: u32,
    /// Window of iterates feeding the iterated metric
    #[arg(long, value_enum, default_value_t = VariantArg::TwoSided)]
    variant: VariantArg,
    /// Cover search strategy
    #[arg(long, value_enum, default_value_t = CoverArg::Greedy)]
    cover: CoverArg,
    #[arg(long = "N", value_name = "INT", default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long = "N", value_name = "INT", default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}

type CliResult = Result<ExitCode, Box<dyn Error>>;

fn run(command: Command) -> CliResult {
    match command {
        Command::Dist(args) => run_dist(args),
        Command::Orbit(args) => run_orbit(args),
        Command::Expansive(args) => run_expansive(args),
        Command::Stable(args) => run_stable(args),
        Command::Unstable(args) => run_unstable(args),
        Command::Separation(args) => run_separation(args),
        Command::Hierarchy(args) => run_hierarchy(args),
        Command::Entropy(args) => run_entropy(args),
        Command::Reproduce(args) => run_reproduce(args),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Box<dyn Error>> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn envelope(
    command: &str,
    params: serde_json::Value,
    result: serde_json::Value,
) -> Result<String, Box<dyn Error>> {
    let value = json!({ "command": command, "params": params, "result": result });
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

/// Six significant decimals, trailing zeros trimmed.
fn fmt(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        return format!("{v:.0}");
    }
    let s = format!("{v:.6}");
    let trimmed = s.trim_end_matches('0');
    trimmed.strip_suffix('.').unwrap_or(trimmed).to_string()
}

/// Sample points grow past 10^48; switch to exponent notation early.
fn fmt_sample_point(v: f64) -> String {
    if v < 1e9 {
        fmt(v)
    } else {
        format!("{v:e}")
    }
}

fn direction_name(direction: SeparationDirection) -> &'static str {
    match direction {
        SeparationDirection::ForwardDc => "FORWARD_DC",
        SeparationDirection::Conjugate => "CONJUGATE",
        SeparationDirection::Symmetrized => "SYMMETRIZED",
    }
}

fn verdict_name(verdict: GapVerdict) -> &'static str {
    match verdict {
        GapVerdict::GapHolds => "GAP_HOLDS",
        GapVerdict::GapFails => "GAP_FAILS",
        GapVerdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn run_dist(args: DistArgs) -> CliResult {
    let f = ComplexityFunction::parse(&args.f)?;
    let g = ComplexityFunction::parse(&args.g)?;

    if let Some(up_to) = args.sums {
        let sums = partial_sums(&f, &g, up_to)?;
        let text = match args.output.format {
            OutputFormat::Table => {
                let mut s = String::new();
                for (terms, value) in &sums {
                    writeln!(s, "S_{terms} = {}", fmt(*value))?;
                }
                s
            }
            OutputFormat::Csv => {
                let mut s = String::from("terms,value\n");
                for (terms, value) in &sums {
                    writeln!(s, "{terms},{value}")?;
                }
                s
            }
            OutputFormat::Json => envelope(
                "dist",
                json!({ "f": args.f, "g": args.g, "N": args.truncation, "sums": up_to }),
                serde_json::to_value(&sums)?,
            )?,
        };
        emit(&text, args.output.out.as_ref())?;
        return Ok(ExitCode::SUCCESS);
    }

    let (label, result) = match args.direction {
        Direction::Forward => ("dc", dc(&f, &g, args.truncation)?),
        Direction::Conjugate => ("dc_conjugate", dc_conjugate(&f, &g, args.truncation)?),
        Direction::Sym => ("d_sym", dc_sym(&f, &g, args.truncation)?),
    };
    let text = match args.output.format {
        OutputFormat::Table => format!(
            "{label}({} ; {}) = {}\nerror bound: 2^-{}\nzero by dominance: {}\n",
            f.source(),
            g.source(),
            fmt(result.value),
            result.truncation,
            result.zero_by_dominance
        ),
        OutputFormat::Csv => format!(
            "value,truncation_N,error_bound,zero_by_dominance\n{},{},{},{}\n",
            result.value, result.truncation, result.error_bound, result.zero_by_dominance
        ),
        OutputFormat::Json => envelope(
            "dist",
            json!({
                "f": args.f,
                "g": args.g,
                "N": args.truncation,
                "direction": label,
            }),
            serde_json::to_value(&result)?,
        )?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn orbit_table(trace: &OrbitTrace) -> Result<String, Box<dyn Error>> {
    let mut s = format!(
        "{:>5} {:>10} {:>10} {:>10} {:>12}\n",
        "k", "d_fg", "d_gf", "d_sym", "theoretical"
    );
    for row in &trace.rows {
        writeln!(
            s,
            "{:>5} {:>10} {:>10} {:>10} {:>12}",
            row.k,
            fmt(row.d_fg),
            fmt(row.d_gf),
            fmt(row.d_sym),
            row.theoretical_fg.map_or_else(|| "-".to_string(), fmt)
        )?;
    }
    Ok(s)
}

fn run_orbit(args: OrbitArgs) -> CliResult {
    let f = ComplexityFunction::parse(&args.f)?;
    let g = ComplexityFunction::parse(&args.g)?;

    let (trace, params) = if let Some(offset) = args.translate {
        let k_max = u32::try_from(args.k_max).map_err(|_| {
            cqdyn::Error::InvalidParameter(format!(
                "translation orbits run forward only; kmax must be non-negative, got {}",
                args.k_max
            ))
        })?;
        (
            translation_orbit(&f, &g, offset, k_max, args.truncation)?,
            json!({
                "f": args.f, "g": args.g, "translate": offset,
                "kmax": k_max, "N": args.truncation,
            }),
        )
    } else {
        (
            orbit_trace(&f, &g, args.alpha, args.k_min, args.k_max, args.truncation)?,
            json!({
                "f": args.f, "g": args.g, "alpha": args.alpha,
                "kmin": args.k_min, "kmax": args.k_max, "N": args.truncation,
            }),
        )
    };

    let text = match args.output.format {
        OutputFormat::Table => orbit_table(&trace)?,
        OutputFormat::Csv => trace.to_csv(),
        OutputFormat::Json => envelope("orbit", params, serde_json::to_value(&trace)?)?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn separation_table(result: &SeparationResult) -> Result<String, Box<dyn Error>> {
    let mut s = String::new();
    if result.found {
        writeln!(
            s,
            "found at k={} (direction {}, distance {})",
            result.at_iterate.expect("found results carry an iterate"),
            direction_name(
                result
                    .witness_direction
                    .expect("found results carry a direction")
            ),
            fmt(result.distance.expect("found results carry a distance")),
        )?;
    } else {
        writeln!(s, "not found within the scanned iterates")?;
    }
    match result.predicted_iterate {
        Some(k) => writeln!(s, "predicted iterate: {k}")?,
        None => writeln!(s, "predicted iterate: none (no expansion)")?,
    }
    Ok(s)
}

fn separation_csv(result: &SeparationResult) -> String {
    format!(
        "found,at_iterate,distance,direction,predicted_iterate\n{},{},{},{},{}\n",
        result.found,
        result.at_iterate.map_or_else(String::new, |k| k.to_string()),
        result.distance.map_or_else(String::new, |d| d.to_string()),
        result
            .witness_direction
            .map_or("", direction_name),
        result
            .predicted_iterate
            .map_or_else(String::new, |k| k.to_string()),
    )
}

fn run_expansive(args: ExpansiveArgs) -> CliResult {
    let f = ComplexityFunction::parse(&args.f)?;
    let g = ComplexityFunction::parse(&args.g)?;
    let result = check_expansive(&f, &g, args.alpha, args.delta, args.scan_bound, args.truncation)?;
    let text = match args.output.format {
        OutputFormat::Table => separation_table(&result)?,
        OutputFormat::Csv => separation_csv(&result),
        OutputFormat::Json => envelope(
            "expansive",
            json!({
                "f": args.f, "g": args.g, "alpha": args.alpha, "delta": args.delta,
                "M": args.scan_bound, "N": args.truncation,
            }),
            serde_json::to_value(&result)?,
        )?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn membership_table(verdict: &MembershipVerdict) -> Result<String, Box<dyn Error>> {
    let (name, value) = match &verdict.certificate {
        Certificate::DcWithinDelta(v) => ("DC_WITHIN_DELTA", Some(fmt(*v))),
        Certificate::Dominance => ("DOMINANCE", None),
        Certificate::DistanceExceeds(v) => ("DISTANCE_EXCEEDS", Some(fmt(*v))),
        Certificate::ViolationAtN(n) => ("VIOLATION_AT_N", Some(n.to_string())),
    };
    let mut s = String::new();
    writeln!(s, "member: {}", if verdict.member { "yes" } else { "no" })?;
    match value {
        Some(v) => writeln!(s, "certificate: {name} (value {v})")?,
        None => writeln!(s, "certificate: {name}")?,
    }
    if let Some(delta) = verdict.delta {
        writeln!(s, "delta: {}", fmt(delta))?;
    }
    writeln!(s, "horizon: {}", verdict.horizon)?;
    Ok(s)
}

fn membership_csv(verdict: &MembershipVerdict) -> String {
    let (name, value) = match &verdict.certificate {
        Certificate::DcWithinDelta(v) => ("DC_WITHIN_DELTA", v.to_string()),
        Certificate::Dominance => ("DOMINANCE", String::new()),
        Certificate::DistanceExceeds(v) => ("DISTANCE_EXCEEDS", v.to_string()),
        Certificate::ViolationAtN(n) => ("VIOLATION_AT_N", n.to_string()),
    };
    format!(
        "member,certificate,value,delta,horizon\n{},{},{},{},{}\n",
        verdict.member,
        name,
        value,
        verdict.delta.map_or_else(String::new, |d| d.to_string()),
        verdict.horizon,
    )
}

fn run_stable(args: StableArgs) -> CliResult {
    let f = ComplexityFunction::parse(&args.f)?;
    let g = ComplexityFunction::parse(&args.g)?;
    let verdict = stable_membership(
        &f,
        &g,
        args.alpha,
        args.delta,
        args.scan_bound,
        args.truncation,
    )?;
    let text = match args.output.format {
        OutputFormat::Table => membership_table(&verdict)?,
        OutputFormat::Csv => membership_csv(&verdict),
        OutputFormat::Json => envelope(
            "stable",
            json!({
                "f": args.f, "g": args.g, "alpha": args.alpha, "delta": args.delta,
                "M": args.scan_bound, "N": args.truncation,
            }),
            serde_json::to_value(&verdict)?,
        )?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_unstable(args: UnstableArgs) -> CliResult {
    let f = ComplexityFunction::parse(&args.f)?;
    let g = ComplexityFunction::parse(&args.g)?;
    let verdict = unstable_membership(&f, &g, args.horizon)?;
    let text = match args.output.format {
        OutputFormat::Table => membership_table(&verdict)?,
        OutputFormat::Csv => membership_csv(&verdict),
        OutputFormat::Json => envelope(
            "unstable",
            json!({ "f": args.f, "g": args.g, "M": args.horizon }),
            serde_json::to_value(&verdict)?,
        )?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_separation(args: SeparationArgs) -> CliResult {
    let f = ComplexityFunction::parse(&args.f)?;
    let g = ComplexityFunction::parse(&args.g)?;
    let result = hierarchy_separation(
        &f,
        &g,
        args.alpha,
        args.delta,
        args.scan_bound,
        args.truncation,
    )?;
    let text = match args.output.format {
        OutputFormat::Table => separation_table(&result)?,
        OutputFormat::Csv => separation_csv(&result),
        OutputFormat::Json => envelope(
            "separation",
            json!({
                "f": args.f, "g": args.g, "alpha": args.alpha, "delta": args.delta,
                "M": args.scan_bound, "N": args.truncation,
            }),
            serde_json::to_value(&result)?,
        )?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_hierarchy(args: HierarchyArgs) -> CliResult {
    let f = ComplexityFunction::parse(&args.f)?;
    let g = ComplexityFunction::parse(&args.g)?;
    let trace = gap_check(&f, &g, args.n_points)?;
    let text = match args.output.format {
        OutputFormat::Table => {
            let mut s = String::new();
            writeln!(s, "verdict: {}", verdict_name(trace.verdict))?;
            writeln!(s, "valid samples: {}", trace.samples.len())?;
            if let (Some(first), Some(last)) = (trace.samples.first(), trace.samples.last()) {
                writeln!(
                    s,
                    "first sample: n={} ratio={}",
                    fmt_sample_point(first.n),
                    fmt(first.ratio)
                )?;
                writeln!(
                    s,
                    "last sample: n={} ratio={}",
                    fmt_sample_point(last.n),
                    fmt(last.ratio)
                )?;
            }
            s
        }
        OutputFormat::Csv => trace.to_csv(),
        OutputFormat::Json => envelope(
            "hierarchy",
            json!({ "f": args.f, "g": args.g, "nmax": args.n_points }),
            serde_json::to_value(&trace)?,
        )?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_entropy(args: EntropyArgs) -> CliResult {
    let set: Vec<ComplexityFunction> = args
        .f
        .iter()
        .map(|src| ComplexityFunction::parse(src))
        .collect::<cqdyn::Result<_>>()?;
    let variant = match args.variant {
        VariantArg::Forward => Variant::Forward,
        VariantArg::TwoSided => Variant::TwoSided,
    };
    let mode = match args.cover {
        CoverArg::Greedy => CoverMode::Greedy,
        CoverArg::Exact => CoverMode::Exact,
    };
    let estimate = entropy_estimate(
        &set,
        args.alpha,
        args.epsilon,
        args.n_max,
        variant,
        mode,
        args.truncation,
    )?;
    let text = match args.output.format {
        OutputFormat::Table => {
            let mut s = format!("{:>4} {:>6}\n", "n", "r");
            for count in &estimate.spanning_counts {
                writeln!(s, "{:>4} {:>6}", count.n, count.r)?;
            }
            writeln!(s, "slope (full range): {}", fmt(estimate.slope_full_range))?;
            writeln!(
                s,
                "slope (pre-saturation): {}",
                fmt(estimate.slope_pre_saturation)
            )?;
            s
        }
        OutputFormat::Csv => estimate.counts_to_csv(),
        OutputFormat::Json => envelope(
            "entropy",
            json!({
                "f": args.f, "alpha": args.alpha, "epsilon": args.epsilon,
                "nmax": args.n_max,
                "variant": match variant { Variant::Forward => "forward", Variant::TwoSided => "two-sided" },
                "cover": match mode { CoverMode::Greedy => "greedy", CoverMode::Exact => "exact" },
                "N": args.truncation,
            }),
            serde_json::to_value(&estimate)?,
        )?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_reproduce(args: ReproduceArgs) -> CliResult {
    let report = reproduction_report(args.truncation)?;
    let text = match args.output.format {
        OutputFormat::Table => report.render_table(),
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => envelope(
            "reproduce",
            json!({ "N": args.truncation }),
            serde_json::to_value(&report)?,
        )?,
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
