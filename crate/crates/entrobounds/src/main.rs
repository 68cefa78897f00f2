use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use entrobounds::atoms::{
    load_atomic_table, validate_records, EntryStatus, FamilySelector, ValidationReport,
};
use entrobounds::bounds::{
    self, Branch, Direction, ProductSpec, ScalingLaw,
};
use entrobounds::error::Error;
use entrobounds::tables::{self, format_sig, TableId};

#[derive(Parser)]
#[command(
    name = "entrobounds",
    about = "Spin-dependent uncertainty-product bounds from extremum-entropy densities"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Significant digits for numeric output.
    #[arg(long, global = true, default_value_t = 6)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one bound family for a product <r^alpha>^{k/alpha} <p^k>.
    Bound(BoundArgs),
    /// Regenerate a reference table (I-VI).
    Table(TableArgs),
    /// Optimize the Tsallis parameter for a product.
    Optimize(OptimizeArgs),
    /// Validate a Hartree-Fock dataset against the lower bounds.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Maxent,
    Mininf,
    Maxtent,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Radial order alpha (ignored by mininf, whose product is
    /// <r^-1>^{-k} <p^k>).
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    k: f64,
    /// Spin multiplicity q = 2s + 1.
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Particle number to evaluate at.
    #[arg(long = "N", default_value_t = 1.0)]
    n: f64,
    /// Tsallis parameter (maxtent only; t > 1 compact, 0 < t < 1
    /// subcritical).
    #[arg(long)]
    t: Option<f64>,
}

#[derive(Args)]
struct TableArgs {
    /// Table id: I, II, III, IV, V or VI.
    id: String,
    /// Atomic dataset (required for table VI).
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    k: f64,
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Defaults to the branch selected by the sign of k.
    #[arg(long, value_enum)]
    branch: Option<BranchArg>,
    /// Particle number to evaluate at.
    #[arg(long = "N", default_value_t = 2.0)]
    n: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Compact,
    Subcritical,
}

#[derive(Args)]
struct ValidateArgs {
    /// Long-schema CSV dataset: symbol,N,alpha,k,hf_value.
    #[arg(long)]
    data: PathBuf,
    /// Families: maxent, mininf, maxtent-optimal, maxtent@T.
    #[arg(long, value_delimiter = ',', default_value = "maxent,maxtent-optimal")]
    families: Vec<String>,
}

#[derive(Serialize)]
struct BoundReport {
    #[serde(flatten)]
    law: ScalingLaw,
    n: f64,
    q: u32,
    value: f64,
}

fn direction_word(d: Direction) -> &'static str {
    match d {
        Direction::Lower => "lower",
        Direction::Upper => "upper",
    }
}

fn print_law(report: &BoundReport, format: Format, digits: usize) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serialization")
        ),
        Format::Csv => {
            println!("family,direction,coefficient,exponent_n,exponent_q,N,q,value");
            println!(
                "{},{},{},{},{},{},{},{}",
                report.law.family,
                direction_word(report.law.direction),
                format_sig(report.law.coefficient, digits),
                report.law.exponent_n,
                report.law.exponent_q,
                report.n,
                report.q,
                format_sig(report.value, digits),
            );
        }
        Format::Text => {
            println!("family:      {}", report.law.family);
            println!("direction:   {} bound", direction_word(report.law.direction));
            println!(
                "law:         {} * N^{} * q^{}",
                format_sig(report.law.coefficient, digits),
                report.law.exponent_n,
                report.law.exponent_q
            );
            println!("validity:    {}", report.law.validity);
            println!(
                "value:       {}   (N = {}, q = {})",
                format_sig(report.value, digits),
                report.n,
                report.q
            );
        }
    }
}

fn cmd_bound(args: &BoundArgs, format: Format, digits: usize) -> Result<(), Error> {
    let law = match args.family {
        FamilyArg::Maxent => bounds::maxent_bound(args.d, args.k, args.alpha, args.q)?,
        FamilyArg::Mininf => bounds::mininf_bound(args.d, args.k, args.q)?,
        FamilyArg::Maxtent => {
            let t = args.t.ok_or_else(|| {
                Error::domain("maxtent requires --t (t > 1 compact, 0 < t < 1 subcritical)")
            })?;
            if args.d != 3 {
                return Err(Error::domain("maxtent bounds are implemented for d = 3"));
            }
            if t > 1.0 {
                bounds::maxtent_lower_bound(t, args.alpha, args.k, args.q)?
            } else {
                bounds::maxtent_upper_bound(t, args.alpha, args.k, args.q)?
            }
        }
    };
    let value = law.evaluate(args.n, args.q);
    print_law(
        &BoundReport {
            law,
            n: args.n,
            q: args.q,
            value,
        },
        format,
        digits,
    );
    Ok(())
}

fn cmd_table(args: &TableArgs, format: Format, digits: usize) -> Result<(), Error> {
    let id: TableId = args.id.parse()?;
    let records = if args.data.is_some() || id == TableId::VI {
        {
            let path = args
                .data
                .clone()
                .ok_or_else(|| Error::domain("table VI needs --data <csv>"))?;
            let file = File::open(&path).map_err(|e| Error::Schema {
                msg: format!("cannot open {}: {e}", path.display()),
            })?;
            let table = load_atomic_table(file)?;
            for w in &table.warnings {
                eprintln!("warning: {w}");
            }
            Some(table.records)
        }
    } else {
        None
    };
    let table = tables::build_table(id, records.as_deref(), digits)?;
    match format {
        Format::Csv => print!("{}", tables::render_csv(&table)),
        Format::Json => println!("{}", tables::render_json(&table)),
        Format::Text => print!("{}", tables::render_text(&table)),
    }
    Ok(())
}

#[derive(Serialize)]
struct OptimizeReport {
    t_star: f64,
    #[serde(flatten)]
    law: ScalingLaw,
    value: f64,
    /// MaxEnt value for the same product (compact branch only).
    #[serde(skip_serializing_if = "Option::is_none")]
    maxent_value: Option<f64>,
}

fn cmd_optimize(args: &OptimizeArgs, format: Format, digits: usize) -> Result<(), Error> {
    let branch = match args.branch {
        Some(BranchArg::Compact) => Branch::Compact,
        Some(BranchArg::Subcritical) => Branch::Subcritical,
        None => {
            if args.k > 0.0 {
                Branch::Compact
            } else {
                Branch::Subcritical
            }
        }
    };
    let spec = ProductSpec::new(args.alpha, args.k)?;
    let (t_star, law) = bounds::optimize_tsallis_t(spec, args.q, branch)?;
    let value = law.evaluate(args.n, args.q);
    let maxent_value = if args.k > 0.0 {
        Some(bounds::maxent_bound(3, args.k, args.alpha, args.q)?.evaluate(args.n, args.q))
    } else {
        None
    };
    let report = OptimizeReport {
        t_star,
        law,
        value,
        maxent_value,
    };
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serialization")
        ),
        Format::Csv => {
            println!("t_star,coefficient,exponent_n,exponent_q,N,q,value,maxent_value");
            println!(
                "{},{},{},{},{},{},{},{}",
                report.t_star,
                format_sig(report.law.coefficient, digits),
                report.law.exponent_n,
                report.law.exponent_q,
                args.n,
                args.q,
                format_sig(report.value, digits),
                report
                    .maxent_value
                    .map_or(String::new(), |v| format_sig(v, digits)),
            );
        }
        Format::Text => {
            println!("t* = {}", report.t_star);
            println!(
                "law:    {} * N^{} * q^{}  ({} bound)",
                format_sig(report.law.coefficient, digits),
                report.law.exponent_n,
                report.law.exponent_q,
                direction_word(report.law.direction)
            );
            println!(
                "value:  {}   (N = {}, q = {})",
                format_sig(report.value, digits),
                args.n,
                args.q
            );
            if let Some(m) = report.maxent_value {
                println!(
                    "maxent: {}   (ratio {})",
                    format_sig(m, digits),
                    format_sig(report.value / m, digits)
                );
            }
        }
    }
    Ok(())
}

fn render_validation(report: &ValidationReport, format: Format, digits: usize) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serialization")
        ),
        Format::Csv => {
            println!("symbol,N,alpha,k,family,bound,hf_value,margin,status");
            for e in &report.entries {
                let status = match &e.status {
                    EntryStatus::Pass => "pass".to_string(),
                    EntryStatus::Fail => "fail".to_string(),
                    EntryStatus::Skipped { reason } => format!("skipped: {reason}"),
                };
                println!(
                    "{},{},{},{},{},{},{},{},{}",
                    e.record.symbol,
                    e.record.n,
                    e.record.alpha,
                    e.record.k,
                    e.family,
                    e.bound_value.map_or(String::new(), |v| format_sig(v, digits)),
                    format_sig(e.record.hf_value, digits),
                    e.margin.map_or(String::new(), |v| format_sig(v, digits)),
                    status,
                );
            }
        }
        Format::Text => {
            for e in &report.entries {
                match &e.status {
                    EntryStatus::Skipped { reason } => println!(
                        "{:<4} alpha={} k={} {}: skipped ({reason})",
                        e.record.symbol, e.record.alpha, e.record.k, e.family
                    ),
                    status => println!(
                        "{:<4} alpha={} k={} {}: bound {} vs HF {} (margin {}) {}",
                        e.record.symbol,
                        e.record.alpha,
                        e.record.k,
                        e.family,
                        format_sig(e.bound_value.unwrap(), digits),
                        format_sig(e.record.hf_value, digits),
                        format_sig(e.margin.unwrap(), digits),
                        if *status == EntryStatus::Pass { "pass" } else { "FAIL" },
                    ),
                }
            }
            let s = &report.summary;
            println!(
                "{} entries: {} passed, {} failed, {} skipped{}",
                s.total,
                s.passed,
                s.failed,
                s.skipped,
                s.worst_margin
                    .map_or(String::new(), |m| format!(", worst margin {}", format_sig(m, digits)))
            );
        }
    }
}

fn cmd_validate(args: &ValidateArgs, format: Format, digits: usize) -> Result<bool, Error> {
    let file = File::open(&args.data).map_err(|e| Error::Schema {
        msg: format!("cannot open {}: {e}", args.data.display()),
    })?;
    let table = load_atomic_table(file)?;
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    let families = args
        .families
        .iter()
        .map(|s| s.parse::<FamilySelector>())
        .collect::<Result<Vec<_>, _>>()?;
    let report = validate_records(&table.records, &families);
    render_validation(&report, format, digits);
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Bound(args) => cmd_bound(args, cli.format, cli.digits).map(|_| true),
        Command::Table(args) => cmd_table(args, cli.format, cli.digits).map(|_| true),
        Command::Optimize(args) => cmd_optimize(args, cli.format, cli.digits).map(|_| true),
        Command::Validate(args) => cmd_validate(args, cli.format, cli.digits),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                // Internal numeric failures are distinct from usage and
                // domain errors.
                Error::NonConvergence { .. } => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
