use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blob_workbench::config::{parse_config, RunConfig, Suite};
use blob_workbench::report::{all_passed, emit, emit_csv, Format};
use blob_workbench::suite::{run_suite, spectrum_rows};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "blobcheck", version, about = "Numerical checks for blob-algebra spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    JsonLines,
    SummaryText,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites and report every residual.
    Check {
        #[arg(long)]
        config: PathBuf,
        /// Restrict to these suites (repeatable); overrides the config.
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
        #[arg(long, value_enum, default_value = "json-lines")]
        format: OutputFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock time per check (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Write the Hamiltonian spectrum of the configured chain as CSV.
    Spectrum {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the available suites.
    ListChecks,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn load(path: &Path) -> Result<RunConfig, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut cfg = parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Ok(seed) = std::env::var("BLOB_SEED") {
        cfg.seed = seed.trim().parse().map_err(|_| format!("BLOB_SEED: expected an unsigned integer, got {seed:?}"))?;
    }
    Ok(cfg)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Check { config, suites, format, out, timings } => {
            let mut cfg = load(&config)?;
            if !suites.is_empty() {
                cfg.suites = suites;
            }
            let reports = run_suite(&cfg, timings);
            let format = match format {
                OutputFormat::JsonLines => Format::JsonLines,
                OutputFormat::SummaryText => Format::SummaryText,
            };
            write_out(out.as_deref(), &emit(&reports, format))?;
            Ok(all_passed(&reports))
        }
        Command::Spectrum { config, out } => {
            let cfg = load(&config)?;
            let rows = spectrum_rows(&cfg).map_err(|e| format!("spectrum: {e}"))?;
            write_out(Some(&out), &emit_csv(&rows))?;
            Ok(true)
        }
        Command::ListChecks => {
            let listing: String = Suite::ALL
                .iter()
                .map(|s| {
                    let default = if Suite::defaults().contains(s) { "" } else { " (not run by default)" };
                    format!("{:<11} {}{default}\n", s.name(), s.description())
                })
                .collect();
            write_out(None, &listing)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("blobcheck: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
