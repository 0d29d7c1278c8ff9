use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use solenoid::algebra::Side;
use solenoid::functions::RealFunction;
use solenoid::heisenberg::{inner_left_table, inner_right_table, rho_j, tail_envelope};
use solenoid::serial::{table_entries, TableEntryDto};
use solenoid::verify::{run_suite, Format, RunConfig};

#[derive(Parser)]
#[command(name = "solenoid", version, about = "Verification suites for p-adic noncommutative solenoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite and write a JSON or CSV report.
    Verify(VerifyArgs),
    /// Tabulate the inner product of two basis vectors of V_j.
    Table(TableArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    suite: Option<String>,
    #[arg(short = 'p')]
    p: Option<String>,
    /// Single level, same as `--levels j..j`.
    #[arg(short = 'j')]
    j: Option<String>,
    /// Inclusive level range `a..b`.
    #[arg(long)]
    levels: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    radius: Option<String>,
    #[arg(long)]
    denom_bound: Option<String>,
    #[arg(long)]
    fourier_range: Option<String>,
    #[arg(long)]
    quad_tol: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    format: Option<String>,
}

impl VerifyArgs {
    fn flags(&self) -> Vec<(&'static str, &String)> {
        let all = [
            ("suite", &self.suite),
            ("p", &self.p),
            ("j", &self.j),
            ("levels", &self.levels),
            ("theta", &self.theta),
            ("radius", &self.radius),
            ("denom-bound", &self.denom_bound),
            ("fourier-range", &self.fourier_range),
            ("quad-tol", &self.quad_tol),
            ("tol", &self.tol),
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("out", &self.out),
            ("format", &self.format),
        ];
        all.into_iter().filter_map(|(k, v)| v.as_ref().map(|v| (k, v))).collect()
    }

    fn build(&self) -> anyhow::Result<RunConfig> {
        let mut cfg = RunConfig::default();
        let mut have_suite = self.suite.is_some();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            cfg.apply_file_text(&text)?;
            have_suite |= text.lines().any(|l| l.split('#').next().unwrap_or("").trim().starts_with("suite"));
        }
        for (k, v) in self.flags() {
            cfg.set(k, v)?;
        }
        anyhow::ensure!(have_suite, "no suite selected; pass --suite or set suite= in the config file");
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableSide {
    Left,
    Right,
}

#[derive(Args)]
struct TableArgs {
    #[arg(short = 'p', default_value_t = 2)]
    p: u32,
    #[arg(short = 'j', default_value_t = 1)]
    j: u32,
    #[arg(long, default_value_t = 0)]
    m1: u64,
    #[arg(long, default_value_t = 0)]
    m2: u64,
    #[arg(long, value_enum, default_value_t = TableSide::Left)]
    side: TableSide,
    #[arg(long, default_value_t = 4)]
    radius: u32,
    #[arg(long, default_value_t = 2)]
    denom_bound: u32,
    #[arg(long, default_value_t = 0.5477)]
    theta: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct TableReport {
    p: u32,
    level: u32,
    m1: u64,
    m2: u64,
    side: &'static str,
    radius: u32,
    denom_bound: u32,
    theta: f64,
    tail_envelope: f64,
    entries: Vec<TableEntryDto>,
}

fn run_table(args: &TableArgs) -> anyhow::Result<String> {
    let check = RunConfig { p: u64::from(args.p), theta: args.theta, radius: f64::from(args.radius), ..RunConfig::default() };
    check.validate()?;
    let g = RealFunction::unit_gaussian(args.p);
    let f1 = rho_j(args.p, args.j, &BigInt::from(args.m1), &g)?;
    let f2 = rho_j(args.p, args.j, &BigInt::from(args.m2), &g)?;
    let radius = num_rational::BigRational::from_integer(args.radius.into());
    let (table, side, name) = match args.side {
        TableSide::Left => (inner_left_table(&f1, &f2, &radius, args.denom_bound)?, Side::D, "left"),
        TableSide::Right => (inner_right_table(&f1, &f2, &radius, args.denom_bound)?, Side::DPerp, "right"),
    };
    let report = TableReport {
        p: args.p,
        level: args.j,
        m1: args.m1,
        m2: args.m2,
        side: name,
        radius: args.radius,
        denom_bound: args.denom_bound,
        theta: args.theta,
        tail_envelope: tail_envelope(&f1, &f2, side, f64::from(args.radius), args.theta),
        entries: table_entries(&table, args.theta)?,
    };
    Ok(serde_json::to_string_pretty(&report)?)
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn verify(args: &VerifyArgs) -> ExitCode {
    let cfg = match args.build() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let written = text.map_err(anyhow::Error::from).and_then(|t| emit(&t, cfg.out.as_ref()));
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let s = &report.summary;
    eprintln!("{}: {}/{} checks passed", report.suite, s.passed, s.total);
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Table(args) => match run_table(args).and_then(|t| emit(&t, args.out.as_ref())) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}
