//! Command-line front end.
//!
//! Exit codes: 0 success, 1 data error (parse, validation, i/o), 2 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::combine::combine;
use crate::error::{Error, Result};
use crate::fixture::{write_fixtures, ExpectedTable};
use crate::ingest::{parse_dataset_with, to_step_counts, DataFormat, ParseOptions};
use crate::label::LabelScale;
use crate::lattice::{assess_group, assess_with_memberships, GroupAssessment};
use crate::membership::build_fuzzy_step;
use crate::numeric::Rounding;
use crate::report::{
    diff_against_fixture, render_combined_report, render_group_report, ReportConfig, ReportFormat,
};
use crate::simulate::{simulate, SimulationParams, Skill};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Tolerance used when diffing a computed lattice against an expected table.
pub const DIFF_TOLERANCE: f64 = 0.01;

#[derive(Debug, Parser)]
#[command(
    name = "arfuzzy",
    version,
    about = "Fuzzy step-set analysis of cohort problem-solving data"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RoundingArg {
    HalfEven,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SkillArg {
    Uniform,
    Strong,
    Weak,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "markdown")]
    pub format: FormatArg,

    /// Decimal places for displayed values.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=15))]
    pub decimals: u32,

    /// Show profiles whose values are all zero.
    #[arg(long, global = true)]
    pub include_zero_rows: bool,

    /// Rounding for displayed values.
    #[arg(long, global = true, value_enum, default_value = "half-even")]
    pub rounding: RoundingArg,

    /// Comma-separated label names, weakest first.
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        default_value = "a,b,c,d,e"
    )]
    pub scale: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one cohort file.
    Analyze {
        input: PathBuf,
        /// Replay memberships from an expected-value table instead of computing them.
        #[arg(long, value_name = "PATH")]
        paper_compat: Option<PathBuf>,
    },
    /// Combine two or more cohort files via pseudo-frequencies.
    Combine {
        #[arg(required = true, num_args = 2.., value_name = "INPUT")]
        inputs: Vec<PathBuf>,
    },
    /// Print a synthetic per-solver cohort as JSON.
    Simulate {
        /// Cohort size.
        #[arg(short, long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Number of steps.
        #[arg(short, long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=64))]
        k: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "uniform")]
        skill: SkillArg,
    },
    /// Write the bundled classroom data set and its expected tables.
    Fixtures {
        /// Target directory (default: current directory).
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

impl OutputArgs {
    fn config(&self) -> ReportConfig {
        ReportConfig {
            format: match self.format {
                FormatArg::Markdown => ReportFormat::Markdown,
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Json => ReportFormat::Json,
            },
            decimals: self.decimals,
            include_zero_rows: self.include_zero_rows,
            rounding: match self.rounding {
                RoundingArg::HalfEven => Rounding::HalfEven,
                RoundingArg::Exact => Rounding::Exact,
            },
        }
    }

    fn label_scale(&self) -> Result<LabelScale> {
        LabelScale::from_names(&self.scale)
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// Reads a cohort file and assesses its lattice.
pub fn load_group(path: &Path, scale: &LabelScale) -> Result<GroupAssessment> {
    let options = ParseOptions {
        scale: Some(scale.clone()),
        group_name: path.file_stem().map(|s| s.to_string_lossy().into_owned()),
    };
    let dataset = parse_dataset_with(&read(path)?, DataFormat::from_path(path), &options)
        .map_err(|e| with_path(e, path))?;
    let steps = to_step_counts(&dataset, scale)
        .and_then(|counts| {
            counts
                .iter()
                .map(build_fuzzy_step)
                .collect::<Result<Vec<_>>>()
        })
        .map_err(|e| with_path(e, path))?;
    assess_group(dataset.group_name, &steps)
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Validation { location, message } => Error::Validation {
            location: format!("{}: {location}", path.display()),
            message,
        },
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    }
}

pub fn cmd_analyze(
    input: &Path,
    paper_compat: Option<&Path>,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<()> {
    let scale = output.label_scale()?;
    let config = output.config();
    let group = load_group(input, &scale)?;
    let Some(table_path) = paper_compat else {
        out.write_all(render_group_report(&group, &config)?.as_bytes())?;
        return Ok(());
    };
    let table = ExpectedTable::parse(&read(table_path)?).map_err(|e| with_path(e, table_path))?;
    let values = table.values(&scale)?;
    let compat = assess_with_memberships(
        format!("{} (paper-compat)", group.group_name()),
        group.steps(),
        &values,
    )?;
    out.write_all(render_group_report(&compat, &config)?.as_bytes())?;
    if config.format == ReportFormat::Markdown {
        let diff = diff_against_fixture(&group, &table, DIFF_TOLERANCE)?;
        writeln!(out, "\nfaithful H = {:.4}", group.entropy())?;
        writeln!(out, "\n## Computed lattice vs {}\n", table_path.display())?;
        out.write_all(diff.render().as_bytes())?;
    }
    Ok(())
}

pub fn cmd_combine(inputs: &[PathBuf], output: &OutputArgs, out: &mut dyn Write) -> Result<()> {
    if inputs.len() < 2 {
        return Err(Error::domain("combine needs at least 2 inputs"));
    }
    let scale = output.label_scale()?;
    let groups = inputs
        .iter()
        .map(|p| load_group(p, &scale))
        .collect::<Result<Vec<_>>>()?;
    let combined = combine(&groups)?;
    out.write_all(render_combined_report(&groups, &combined, &output.config())?.as_bytes())?;
    Ok(())
}

pub fn cmd_simulate(params: &SimulationParams, out: &mut dyn Write) -> Result<()> {
    let dataset = simulate(params)?;
    out.write_all(dataset.to_json()?.as_bytes())?;
    Ok(())
}

pub fn cmd_fixtures(dir: &Path, out: &mut dyn Write) -> Result<()> {
    for path in write_fixtures(dir)? {
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Analyze {
            input,
            paper_compat,
        } => cmd_analyze(input, paper_compat.as_deref(), &cli.output, out),
        Command::Combine { inputs } => cmd_combine(inputs, &cli.output, out),
        Command::Simulate { n, k, seed, skill } => {
            let params = SimulationParams {
                cohort_size: *n as usize,
                steps: *k as usize,
                seed: *seed,
                skill: match skill {
                    SkillArg::Uniform => Skill::Uniform,
                    SkillArg::Strong => Skill::Strong,
                    SkillArg::Weak => Skill::Weak,
                },
                scale: cli.output.label_scale()?,
            };
            cmd_simulate(&params, out)
        }
        Command::Fixtures { dir } => cmd_fixtures(dir, out),
    }
}

/// Parses `args` (including the program name) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            // A bad --scale is a usage problem, not a data problem.
            if matches!(e, Error::InputDomain(_)) && cli.output.label_scale().is_err() {
                EXIT_USAGE
            } else {
                EXIT_DATA
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["arfuzzy"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        assert_eq!(run_args(&["combine", "one.json"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["simulate", "-n", "0"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&["analyze", "x.json", "--decimals", "0"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["analyze", "x.json", "--format", "xml"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_args(&["simulate", "--scale", "a"]).0, EXIT_USAGE);
    }

    #[test]
    fn missing_file_exits_1() {
        let (code, _, err) = run_args(&["analyze", "/nonexistent/missing.json"]);
        assert_eq!(code, EXIT_DATA);
        assert!(err.contains("missing.json"));
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("analyze"));
    }
}
