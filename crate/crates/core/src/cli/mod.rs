//! Command line front end.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 unreadable or invalid
//! input, 3 a structural hypothesis failed (named on stderr).

pub mod problem;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use problem::{Check, Hypothesis, Mode, ProblemSpec, SpecError};
pub use report::{run_analysis, verify_lines, CliError, Report, Status, VerifyLine};

use report::{build_structure, milnor_report, series_comparison};

#[derive(Debug, Parser)]
#[command(
    name = "gjps",
    version,
    about = "Poisson homology and cohomology of generalized Jacobian Poisson structures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute all tables and checks and print a summary.
    Analyze {
        file: PathBuf,
        /// Also write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        max_grade: Option<i64>,
    },
    /// Print one PASS/FAIL/NOTE line per verified statement.
    Verify { file: PathBuf },
    /// Compare the computed PH_i with its closed forms.
    Series {
        file: PathBuf,
        #[arg(long = "i", value_parser = clap::value_parser!(u8).range(0..=3))]
        i: u8,
    },
    /// Milnor number and singularity ring basis of the casimir.
    Milnor { file: PathBuf },
}

fn load(path: &Path) -> Result<ProblemSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(ProblemSpec::parse(&text)?)
}

/// Runs a command, writing normal output to `out`. Returns the exit code.
pub fn execute(command: Command, out: &mut impl Write) -> Result<u8, CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match command {
        Command::Analyze {
            file,
            json,
            max_grade,
        } => {
            let mut spec = load(&file)?;
            if let Some(g) = max_grade {
                if !(0..=problem::MAX_GRADE_LIMIT).contains(&g) {
                    return Err(CliError::Invalid(format!(
                        "--max-grade must lie in 0..={}",
                        problem::MAX_GRADE_LIMIT
                    )));
                }
                spec.max_grade = g;
            }
            let r = run_analysis(&spec)?;
            write!(out, "{}", report::render_tables(&r)).map_err(io)?;
            if let Some(path) = json {
                std::fs::write(&path, r.to_json())
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(0)
        }
        Command::Verify { file } => {
            let spec = load(&file)?;
            let r = run_analysis(&spec)?;
            let lines = verify_lines(&r);
            for l in &lines {
                writeln!(out, "{l}").map_err(io)?;
            }
            Ok(u8::from(lines.iter().any(|l| l.status == Status::Fail)))
        }
        Command::Series { file, i } => {
            let mut spec = load(&file)?;
            spec.checks = [Check::Homology, Check::Series].into_iter().collect();
            let r = run_analysis(&spec)?;
            let s = build_structure(&spec)?;
            let table = &r.homology.as_ref().expect("homology requested").tables[i as usize];
            let c = series_comparison(i, table, &s);
            writeln!(
                out,
                "PH_{i} form grades 0..={}: {}",
                spec.max_grade,
                row(&c.computed)
            )
            .map_err(io)?;
            writeln!(
                out,
                "sequence-derived {} {}",
                c.sequence_derived,
                agreement(c.sequence_matches)
            )
            .map_err(io)?;
            if let (Some(p), Some(m)) = (&c.printed, c.printed_matches) {
                writeln!(out, "printed {p} {}", agreement(m)).map_err(io)?;
            }
            Ok(0)
        }
        Command::Milnor { file } => {
            let spec = load(&file)?;
            let s = build_structure(&spec)?;
            let m = milnor_report(&s)?;
            writeln!(out, "mu(P) = {}", m.milnor).map_err(io)?;
            if m.number.is_some() {
                writeln!(out, "basis {{{}}}", m.basis.join(", ")).map_err(io)?;
            }
            if let Some(p) = &m.planar {
                writeln!(out, "mu(P~) = {} for P~ = {}", p.milnor, p.casimir).map_err(io)?;
                writeln!(out, "planar basis {{{}}}", p.basis.join(", ")).map_err(io)?;
                writeln!(out, "mu(P) = (r+1) mu(P~): {}", p.product_formula).map_err(io)?;
            }
            Ok(0)
        }
    }
}

fn row(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn agreement(m: bool) -> &'static str {
    if m {
        "agrees"
    } else {
        "disagrees"
    }
}

/// Entry point for the binary.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(cli.command, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
