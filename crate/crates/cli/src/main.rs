use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Pow;
use pqf_core::error::{OracleError, PibError, SweepError, ThueError};
use pqf_core::oracle::{audit_generators, audit_thue, Mismatch};
use pqf_core::pib::{family_m, generators, verify_generator, FieldParam};
use pqf_core::report::{render_report_file, ReportFormat};
use pqf_core::sweep::{profiles, run_sweep, SweepConfig, SweepMode, SweepSummary};
use pqf_core::thue::{assert_bennett, solve_small, solve_small_with, SolveOptions, ThueStatus};
use pqf_core::BigInt;

const EXIT_INVALID: u8 = 2;
const EXIT_PRECISION: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "pqf", version, about = "Small solutions of a^4 - g*b^4 = ±1 and power integral bases of Q(m^(1/4))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Binomial quartic Thue equations.
    #[command(subcommand)]
    Thue(ThueCmd),
    /// Power integral bases of pure quartic fields.
    #[command(subcommand)]
    Pib(PibCmd),
    /// Compare solvers with brute force.
    #[command(subcommand)]
    Audit(AuditCmd),
    /// Render the nontrivial rows of a sweep output as a table.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ThueCmd {
    /// Solutions of a^4 - g*b^4 = ±1 with 0 <= b <= height.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        g: BigInt,
        #[arg(long, value_parser = parse_height, default_value = "1e500")]
        height: BigInt,
        /// Starting precision in decimal digits.
        #[arg(long)]
        precision: Option<u32>,
    },
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum PibCmd {
    /// Generators of power integral bases of Q(m^(1/4)), one per class.
    Generators {
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long = "height-gen", value_parser = parse_height, default_value = "1e1000")]
        height_gen: BigInt,
    },
    Sweep(SweepArgs),
    /// Member of the family m = ((s^4 t ± 1)^4 - 1) / s^4 and its check.
    Family {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        sign: i8,
        #[arg(long, value_parser = parse_height, default_value = "1e500")]
        height: BigInt,
    },
}

#[derive(Subcommand)]
enum AuditCmd {
    Thue {
        #[arg(long)]
        g: BigInt,
        #[arg(long)]
        bound: u64,
    },
    Pib {
        #[arg(long)]
        m: BigInt,
        #[arg(long = "box")]
        bound: u64,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    /// Thue height; defaults to the profile value.
    #[arg(long, value_parser = parse_height)]
    height: Option<BigInt>,
    /// Generator coordinate bound; defaults to the profile value.
    #[arg(long = "height-gen", value_parser = parse_height)]
    height_gen: Option<BigInt>,
    #[arg(long, value_enum, default_value_t = Profile::Full)]
    profile: Profile,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    checkpoint: PathBuf,
    #[arg(long)]
    resume: bool,
    /// Starting precision in decimal digits.
    #[arg(long)]
    precision: Option<u32>,
    /// Write elapsed_ms into every record.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Full,
    Desk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Markdown,
    Latex,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Markdown => ReportFormat::Markdown,
            Format::Latex => ReportFormat::Latex,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

/// Accepts `123`, `1e500`, `5e20` and `10^500`.
fn parse_height(s: &str) -> Result<BigInt, String> {
    let s = s.trim();
    let value = if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant: BigInt = mant.parse().map_err(|_| format!("bad mantissa in '{s}'"))?;
        let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in '{s}'"))?;
        mant * BigInt::from(10u32).pow(exp)
    } else if let Some((base, exp)) = s.split_once('^') {
        let base: BigInt = base.parse().map_err(|_| format!("bad base in '{s}'"))?;
        let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in '{s}'"))?;
        Pow::pow(base, exp)
    } else {
        s.parse().map_err(|_| format!("'{s}' is not an integer"))?
    };
    if value < BigInt::from(1) {
        return Err(format!("height must be at least 1, got {s}"));
    }
    Ok(value)
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(1),
        "-" | "-1" | "minus" => Ok(-1),
        _ => Err(format!("sign must be + or -, got '{s}'")),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_invalid_argument(&e) { EXIT_INVALID } else { 1 })
        }
    }
}

fn is_invalid_argument(e: &anyhow::Error) -> bool {
    let pib = |p: &PibError| matches!(p, PibError::UnitParameter(_) | PibError::OutOfTable { .. } | PibError::Inadmissible(_));
    let thue = |t: &ThueError| matches!(t, ThueError::InvalidCoefficient(_) | ThueError::InvalidHeight);
    if let Some(s) = e.downcast_ref::<SweepError>() {
        return matches!(s, SweepError::InvalidConfig(_) | SweepError::ConfigMismatch { .. });
    }
    if let Some(t) = e.downcast_ref::<ThueError>() {
        return thue(t);
    }
    if let Some(p) = e.downcast_ref::<PibError>() {
        return pib(p);
    }
    if let Some(o) = e.downcast_ref::<OracleError>() {
        return match o {
            OracleError::BoxTooLarge(_) | OracleError::SquareCoefficient(_) => true,
            OracleError::Thue(t) => thue(t),
            OracleError::Pib(p) => pib(p),
        };
    }
    false
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Thue(ThueCmd::Solve { g, height, precision }) => thue_solve(&g, &height, precision),
        Command::Thue(ThueCmd::Sweep(args)) => sweep(SweepMode::Thue, args),
        Command::Pib(PibCmd::Generators { m, height_gen }) => pib_generators(&m, &height_gen),
        Command::Pib(PibCmd::Sweep(args)) => sweep(SweepMode::Pib, args),
        Command::Pib(PibCmd::Family { s, t, sign, height }) => pib_family(s, t, sign, &height),
        Command::Audit(AuditCmd::Thue { g, bound }) => {
            let report = audit_thue(&g, bound)?;
            println!("g = {g}, bound = {bound}");
            println!("oracle: {}", join(&report.oracle));
            println!("solver: {}", join(&report.solver));
            print_mismatches(&report.mismatches);
            Ok(if report.agreement { 0 } else { EXIT_MISMATCH })
        }
        Command::Audit(AuditCmd::Pib { m, bound }) => {
            let report = audit_generators(&m, bound)?;
            println!("m = {m}, box = {bound}");
            println!("oracle: {}", join(&report.oracle));
            println!("solver: {}", join(&report.solver));
            print_mismatches(&report.mismatches);
            Ok(if report.agreement { 0 } else { EXIT_MISMATCH })
        }
        Command::Report { input, format, out } => {
            let doc = render_report_file(&input, format.into())?;
            match out {
                Some(path) => fs::write(&path, doc).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{doc}"),
            }
            Ok(0)
        }
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn print_mismatches<T: std::fmt::Display>(mismatches: &[Mismatch<T>]) {
    if mismatches.is_empty() {
        println!("agreement");
    }
    for m in mismatches {
        match m {
            Mismatch::OnlyInOracle(x) => println!("MISMATCH only in oracle: {x}"),
            Mismatch::OnlyInSolver(x) => println!("MISMATCH only in solver: {x}"),
        }
    }
}

fn thue_solve(g: &BigInt, height: &BigInt, precision: Option<u32>) -> anyhow::Result<u8> {
    let opts = SolveOptions { precision, ..Default::default() };
    let result = solve_small_with(g, height, &opts)?;
    println!("g = {g}, status = {}", result.status.as_str());
    if result.status == ThueStatus::SkippedReducible {
        return Ok(0);
    }
    println!("precision = {} digits", result.precision_used);
    for s in &result.solutions {
        println!("{s}");
    }
    if result.status == ThueStatus::Solved {
        assert_bennett(&result)?;
    }
    Ok(if result.status == ThueStatus::PrecisionFailure { EXIT_PRECISION } else { 0 })
}

fn pib_generators(m: &BigInt, h_gen: &BigInt) -> anyhow::Result<u8> {
    let param = FieldParam::classify_by_trial(m)?;
    if !param.is_admissible() {
        let reasons: Vec<_> = param.reasons().iter().map(|r| r.as_str()).collect();
        bail!(PibError::Inadmissible(format!("{m} ({})", reasons.join(", "))));
    }
    let set = generators(&param, h_gen)?;
    println!("m = {m}, status = {}", set.status.as_str());
    for g in &set.generators {
        println!("{g}");
    }
    Ok(if set.status == ThueStatus::PrecisionFailure { EXIT_PRECISION } else { 0 })
}

fn pib_family(s: u64, t: u64, sign: i8, height: &BigInt) -> anyhow::Result<u8> {
    let member = family_m(s, t, sign);
    println!("m = {}", member.m);
    println!("predicted = ({}, {})", member.a, member.b);
    let param = match FieldParam::classify_by_trial(&member.m) {
        Ok(p) => p,
        Err(PibError::UnitParameter(_)) => {
            println!("verdict = not applicable (m is a unit)");
            return Ok(0);
        }
        Err(e) => return Err(e.into()),
    };
    let Some(predicted) = member.predicted() else {
        println!("verdict = FAILED (predicted pair does not solve the equation)");
        return Ok(1);
    };
    let thue = solve_small(&member.m, height)?;
    let mut expected = vec![pqf_core::thue::ThueSolution::trivial(), predicted];
    expected.sort();
    let mut got = thue.solutions.clone();
    got.sort();
    let thue_ok = thue.status == ThueStatus::Solved && got == expected;
    println!("solver = {}", join(&thue.solutions));

    if !param.is_admissible() {
        let reasons: Vec<_> = param.reasons().iter().map(|r| r.as_str()).collect();
        println!("field = inadmissible ({})", reasons.join(", "));
        println!("verdict = {}", if thue_ok { "verified (Thue only)" } else { "FAILED" });
        return Ok(if thue_ok { 0 } else { 1 });
    }
    let set = generators(&param, height)?;
    let mut want = member.predicted_generators();
    want.sort();
    let mut have = set.generators.clone();
    have.sort();
    let gens_ok = have == want && have.iter().all(|g| verify_generator(&member.m, g).is_ok());
    println!("generators = {}", join(&set.generators));
    let ok = thue_ok && gens_ok;
    println!("verdict = {}", if ok { "verified" } else { "FAILED" });
    Ok(if ok { 0 } else { 1 })
}

fn sweep(mode: SweepMode, args: SweepArgs) -> anyhow::Result<u8> {
    let height = match mode {
        SweepMode::Thue => args.height.unwrap_or_else(|| match args.profile {
            Profile::Full => profiles::thue_full(),
            Profile::Desk => profiles::thue_desk(),
        }),
        SweepMode::Pib => args.height_gen.or(args.height).unwrap_or_else(|| match args.profile {
            Profile::Full => profiles::pib_full(),
            Profile::Desk => profiles::pib_desk(),
        }),
    };
    let mut config = SweepConfig::new(mode, args.from, args.to, height, args.out, args.checkpoint);
    config.jobs = args.jobs;
    config.resume = args.resume;
    config.precision = args.precision;
    config.record_timing = args.timing;
    let summary = run_sweep(&config)?;
    print_summary(&summary);
    if !summary.bennett_violations.is_empty() {
        bail!("{} Bennett violations", summary.bennett_violations.len());
    }
    Ok(if summary.count(ThueStatus::PrecisionFailure.as_str()) > 0 { EXIT_PRECISION } else { 0 })
}

fn print_summary(summary: &SweepSummary) {
    println!("records = {}", summary.records);
    for (status, n) in &summary.counts {
        println!("{status} = {n}");
    }
    println!("blocks written = {}", summary.blocks_written);
    println!("wall time = {:.3} s", summary.wall.as_secs_f64());
    println!("slowest record = {} ms", summary.max_record_ms);
    println!("bennett violations = {}", summary.bennett_violations.len());
}
