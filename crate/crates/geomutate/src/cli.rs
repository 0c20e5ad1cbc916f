//! `geomutate` command line.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use geomutate_core::catalog::{find_operator, list_operators};
use geomutate_core::corpus::{GEOFENCE_SUT, REPARCEL_SUT};
use geomutate_core::engine::enumerate_mutants;
use geomutate_core::interception::list_interceptable_operations;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fixtures::FixtureSet;
use crate::harness::{run_analysis, MutationReport, RunOptions, DEFAULT_TIMEOUT_MS};
use crate::manifest::Manifest;
use crate::report::{to_json, to_text};
use crate::suites::{bundled_fixtures, geofence_suite, reparcel_suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "geomutate", version, about = "Mutation testing for GIS systems under test")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the mutation operators and the operations they target
    ListOperators {
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// List the interceptable operations of a bundled SUT
    ListTargets {
        #[arg(long)]
        sut: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Enumerate mutants and write a manifest
    Mutate {
        #[arg(long)]
        sut: String,
        /// Comma-separated operator ids, or `all`
        #[arg(long, value_delimiter = ',', required = true)]
        operators: Vec<String>,
        /// Restrict mutants to these operation names
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<String>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a suite against the baseline and every mutant of a manifest
    Run {
        #[arg(long)]
        manifest: PathBuf,
        /// Bundled suite name (`strong` or `weak`)
        #[arg(long)]
        suite: String,
        /// Fixture file to build the suite from instead of the bundled one
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_MS, value_parser = clap::value_parser!(u64).range(1..))]
        timeout_ms: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Directory receiving report.json and report.txt
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::ListOperators { format } => {
            print!("{}", operators_listing(format));
            Ok(())
        }
        Command::ListTargets { sut, format } => {
            print!("{}", targets_listing(&sut, format)?);
            Ok(())
        }
        Command::Mutate { sut, operators, targets, out } => {
            let manifest = mutate(&sut, &operators, targets.as_deref())?;
            write_file(&out, &manifest.to_json())?;
            println!("{} mutants written to {}", manifest.mutants.len(), out.display());
            Ok(())
        }
        Command::Run { manifest, suite, fixtures, timeout_ms, jobs, out } => {
            let manifest = Manifest::load(&manifest)?;
            let fixtures = match fixtures {
                Some(path) => FixtureSet::load(&path)?,
                None => bundled_fixtures(&manifest.sut, &suite)?,
            };
            let options = RunOptions { timeout: Duration::from_millis(timeout_ms), jobs: jobs as usize };
            let report = run_manifest(&manifest, &suite, &fixtures, options)?;
            std::fs::create_dir_all(&out)
                .map_err(|source| Error::Io { path: out.display().to_string(), source })?;
            write_file(&out.join("report.json"), &to_json(&report))?;
            let text = to_text(&report);
            write_file(&out.join("report.txt"), &text)?;
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn operators_listing(format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let ops: Vec<_> = list_operators()
                .iter()
                .map(|op| {
                    json!({
                        "id": op.id,
                        "description": op.description,
                        "targets": op.target_operation_names,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&ops).expect("json"))
        }
        OutputFormat::Text => {
            let width = list_operators().iter().map(|op| op.id.len()).max().unwrap_or(0);
            list_operators()
                .iter()
                .map(|op| {
                    format!(
                        "{:<width$}  targets: {}\n{:<width$}  {}\n",
                        op.id,
                        op.target_operation_names.join(", "),
                        "",
                        op.description,
                    )
                })
                .collect()
        }
    }
}

fn targets_listing(sut: &str, format: OutputFormat) -> Result<String> {
    let ops = list_interceptable_operations(sut)?;
    Ok(match format {
        OutputFormat::Json => {
            let items: Vec<_> = ops
                .iter()
                .map(|d| {
                    json!({
                        "name": d.name,
                        "arity": d.arity(),
                        "argKinds": d.arg_kinds.iter().map(|k| k.name()).collect::<Vec<_>>(),
                        "sut": d.sut_id,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&items).expect("json"))
        }
        OutputFormat::Text => ops
            .iter()
            .map(|d| {
                let kinds: Vec<&str> = d.arg_kinds.iter().map(|k| k.name()).collect();
                format!("{}/{}  ({})\n", d.name, d.arity(), kinds.join(", "))
            })
            .collect(),
    })
}

/// Expands `all`, enumerates mutants and wraps them into a manifest.
pub fn mutate(sut: &str, operators: &[String], targets: Option<&[String]>) -> Result<Manifest> {
    let ids: Vec<String> = if operators.iter().any(|o| o == "all") {
        list_operators().iter().map(|op| op.id.to_string()).collect()
    } else {
        operators.iter().map(|o| o.trim().to_string()).collect()
    };
    for id in &ids {
        find_operator(id)?;
    }
    let mutants = enumerate_mutants(sut, &ids, targets)?;
    Ok(Manifest::from_mutants(sut, &mutants))
}

/// Runs the manifest's mutants against the suite built from `fixtures`.
pub fn run_manifest(
    manifest: &Manifest,
    suite: &str,
    fixtures: &FixtureSet,
    options: RunOptions,
) -> Result<MutationReport> {
    let mutants = manifest.to_mutants()?;
    match manifest.sut.as_str() {
        GEOFENCE_SUT => run_analysis(&manifest.run, &mutants, geofence_suite(suite, fixtures), options),
        REPARCEL_SUT => run_analysis(&manifest.run, &mutants, reparcel_suite(suite, fixtures), options),
        other => Err(geomutate_core::Error::UnknownSut(other.into()).into()),
    }
}
