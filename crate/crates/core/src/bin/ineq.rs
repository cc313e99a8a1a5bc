use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ineq::harness::wire::to_json_string;
use ineq::harness::{
    evaluate_file, report_to_string, run_suite, RecordPolicy, ReportFormat, SuiteConfig, TheoremId,
    DEFAULT_TOL,
};
use ineq::sharpness::{parse_grid, sweep, Construction};
use ineq::FieldTag;

#[derive(Parser)]
#[command(
    name = "ineq",
    version,
    about = "Evaluate and stress-test reverse Schwarz, triangle, Bessel and Gruss-type inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RecordsArg {
    All,
    Failures,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Thm21,
    Thm22,
    Legacy11,
}

#[derive(Subcommand)]
enum Command {
    /// Sample instances and check every bound chain.
    Verify {
        /// Comma-separated theorem ids, or `all`.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Trials per (theorem, dimension, field) cell.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value = "1,2,3,8", value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value_t = FieldArg::Both)]
        field: FieldArg,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample instances outside the hypotheses.
        #[arg(long)]
        adversarial: bool,
        /// Which per-instance records to include in the report.
        #[arg(long, value_enum, default_value_t = RecordsArg::Failures)]
        records: RecordsArg,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Sweep a limiting construction toward ε → 0.
    Sharpness {
        #[arg(long, value_enum, default_value_t = ConstructionArg::Thm21)]
        construction: ConstructionArg,
        /// Geometric grid `LO:HI:COUNT`.
        #[arg(long, default_value = "1e-6:0.5:12")]
        eps_grid: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the instances of a JSON document.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

fn write_out(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a subcommand; `Err` means an input error (exit code 2).
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify {
            theorems,
            trials,
            dims,
            field,
            tol,
            seed,
            adversarial,
            records,
            output,
            format,
        } => {
            let config = SuiteConfig {
                theorems: TheoremId::parse_list(&theorems)?,
                trials,
                dims,
                fields: match field {
                    FieldArg::Real => vec![FieldTag::Real],
                    FieldArg::Complex => vec![FieldTag::Complex],
                    FieldArg::Both => vec![FieldTag::Real, FieldTag::Complex],
                },
                tol,
                seed,
                adversarial,
                records: match records {
                    RecordsArg::All => RecordPolicy::All,
                    RecordsArg::Failures => RecordPolicy::Failures,
                    RecordsArg::None => RecordPolicy::None,
                },
            };
            let report = run_suite(&config)?;
            let agg = &report.aggregate;
            eprintln!(
                "{} instances, {} admissible, {} violations, {} counterexamples, {} skipped",
                agg.count, agg.admissible, agg.violations, agg.counterexamples, agg.skipped
            );
            write_out(&report_to_string(&report, format.into())?, output.as_ref())?;
            Ok(report.exit_code() as u8)
        }
        Command::Sharpness {
            construction,
            eps_grid,
            output,
        } => {
            let c = match construction {
                ConstructionArg::Thm21 => Construction::Thm21,
                ConstructionArg::Thm22 => Construction::Thm22,
                ConstructionArg::Legacy11 => Construction::Legacy11,
            };
            let result = sweep(c, &parse_grid(&eps_grid)?)?;
            eprintln!("extrapolated limit {}", result.extrapolated_limit);
            write_out(&to_json_string(&result)?, output.as_ref())?;
            Ok(0)
        }
        Command::Eval {
            input,
            output,
            format,
            tol,
        } => {
            let report = evaluate_file(&input, tol)
                .with_context(|| format!("evaluating {}", input.display()))?;
            write_out(&report_to_string(&report, format.into())?, output.as_ref())?;
            Ok(report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
