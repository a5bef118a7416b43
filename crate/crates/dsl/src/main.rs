use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use funcat_core::Suite;
use funcat_dsl::report::Report;
use funcat_dsl::resolve::TaskSpec;
use funcat_dsl::{check, limits, run, Diagnostic, RunOptions, Workbench};

#[derive(Parser)]
#[command(name = "funcat", version, about = "Homological algebra in functor categories, driven by workbench files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a workbench file.
    Check { file: PathBuf },
    /// Run the tasks of a workbench file.
    Run {
        file: PathBuf,
        /// Run only the task with this name.
        #[arg(long)]
        task: Option<String>,
        /// Degree for tasks that do not set `n`.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(0..=limits::MAX_DEGREE as u64))]
        max_degree: u64,
        /// Seed for verify tasks that do not set one.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run one of the randomized verification suites.
    VerifyPaper {
        file: PathBuf,
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        seed: u64,
        /// Number of cases; defaults to the file's verify task for this
        /// suite, then to the suite's default.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=limits::MAX_CASES as u64))]
        cases: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn load(path: &Path) -> Result<Workbench, ExitCode> {
    let src = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {}", path.display(), e);
            return Err(ExitCode::from(2));
        }
    };
    check(&src).map_err(|diags| {
        report_diagnostics(path, &diags);
        ExitCode::from(2)
    })
}

fn report_diagnostics(path: &Path, diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{}:{}", path.display(), d);
    }
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file } => match load(&file) {
            Ok(wb) => {
                println!("{}: ok ({} declarations, {} tasks)", file.display(), wb.order.len(), wb.tasks.len());
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Run {
            file,
            task,
            max_degree,
            seed,
            format,
        } => {
            let wb = match load(&file) {
                Ok(wb) => wb,
                Err(code) => return code,
            };
            let opts = RunOptions {
                task,
                max_degree: max_degree as usize,
                seed,
            };
            match run(&wb, &opts) {
                Ok(report) => emit(&report, format),
                Err(e) => {
                    eprintln!("{}", e);
                    ExitCode::from(2)
                }
            }
        }
        Command::VerifyPaper {
            file,
            suite,
            seed,
            cases,
            format,
        } => {
            let wb = match load(&file) {
                Ok(wb) => wb,
                Err(code) => return code,
            };
            let from_file = wb.tasks.iter().find_map(|t| match t.spec {
                TaskSpec::Verify { suite: s, cases, .. } if s == suite => cases,
                _ => None,
            });
            let cases = cases.map(|c| c as usize).or(from_file).unwrap_or(suite.default_cases());
            emit(&funcat_dsl::run::verify_suite(suite, cases, seed), format)
        }
    }
}
