//! The `edgeflow` command line, as a library so tests can drive it in
//! process.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub mod args;
mod commands;
mod element;
mod output;

#[cfg(test)]
mod cli_tests;

pub use args::{Cli, Command, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Other(_) => EXIT_FAILURE,
        }
    }
}

impl From<edgeflow::Error> for CliError {
    fn from(e: edgeflow::Error) -> Self {
        use edgeflow::Error as E;
        match e {
            E::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            E::Parse(_)
            | E::Invalid(_)
            | E::InvalidModulus
            | E::Recurrent(_)
            | E::DimensionMismatch { .. }
            | E::AxisOutOfRange { .. }
            | E::DegeneratePlacket(_) => CliError::Usage(e.to_string()),
            E::NotACycle | E::BoundaryMismatch => CliError::Other(e.to_string()),
        }
    }
}

/// Everything needed to rerun a command and check its output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    /// Arguments after the program name, without `--threads` and `--manifest`.
    pub command: Vec<String>,
    /// The parsed subcommand with every default filled in.
    pub config: serde_json::Value,
    pub version: String,
    pub exit_code: i32,
    /// SHA-256 of the bytes written to standard output.
    pub output_sha256: String,
}

/// Drops the flags that do not influence output.
fn replayable_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--threads" || a == "--manifest" {
            it.next();
        } else if !(a.starts_with("--threads=") || a.starts_with("--manifest=")) {
            out.push(a.clone());
        }
    }
    out
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses and runs one invocation. `args` excludes the program name.
/// Returns the rendered output and the exit code, or an error.
fn run_parsed(cli: &Cli) -> Result<(String, i32), CliError> {
    let outcome = commands::execute(&cli.command)?;
    Ok((outcome.output.render(cli.format)?, outcome.code))
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Other(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn replay(path: &str, threads: Option<usize>, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Other(format!("cannot read {path}: {e}")))?;
    let manifest: ExperimentManifest =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed manifest {path}: {e}")))?;
    let argv = std::iter::once("edgeflow".to_string()).chain(manifest.command.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(format!("manifest command: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(CliError::Usage("a manifest cannot replay another manifest".into()));
    }
    let (rendered, code) = match with_threads(threads, || run_parsed(&cli))? {
        Ok(r) => r,
        Err(e) => (String::new(), e.exit_code()),
    };
    let sha = digest(rendered.as_bytes());
    if sha != manifest.output_sha256 || code != manifest.exit_code {
        return Err(CliError::Other(format!(
            "replay differs from manifest: sha256 {sha} (expected {}), exit {code} (expected {})",
            manifest.output_sha256, manifest.exit_code
        )));
    }
    out.write_all(rendered.as_bytes()).map_err(|e| CliError::Other(e.to_string()))?;
    Ok(code)
}

fn write_manifest(path: &str, cli: &Cli, args: &[String], code: i32, rendered: &str) -> Result<(), CliError> {
    let mut config = serde_json::to_value(&cli.command).expect("serializable");
    config["format"] = serde_json::to_value(cli.format).expect("serializable");
    let manifest = ExperimentManifest {
        command: replayable_args(args),
        config,
        version: env!("CARGO_PKG_VERSION").to_string(),
        exit_code: code,
        output_sha256: digest(rendered.as_bytes()),
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("serializable");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Other(format!("cannot write manifest {path}: {e}")))
}

/// Runs the command line `args` (program name excluded), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<String> = args.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(std::iter::once("edgeflow".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Replay { path } => replay(path, cli.threads, out),
        _ => with_threads(cli.threads, || run_parsed(&cli)).and_then(|r| r).and_then(|(rendered, code)| {
            out.write_all(rendered.as_bytes()).map_err(|e| CliError::Other(e.to_string()))?;
            if let Some(path) = &cli.manifest {
                write_manifest(path, &cli, &args, code, &rendered)?;
            }
            Ok(code)
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_args_drop_thread_and_path_flags() {
        let args: Vec<String> = ["--threads", "4", "walk", "--manifest=m.json", "--seed", "1", "--threads=2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(replayable_args(&args), vec!["walk", "--seed", "1"]);
    }
}
