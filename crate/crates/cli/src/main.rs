use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mfspec_cli::config::{Format, OutputConfig, Suite};
use mfspec_cli::run::{run_file, write_outcome};
use mfspec_cli::validate::run_suite;

/// Multifractal spectra of Birkhoff averages on interval IFS attractors.
#[derive(Parser)]
#[command(name = "mfspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the command block of a config file.
    Run {
        config: PathBuf,
        /// Overrides `output.path`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Attractor dimension estimate for the config's system at depth `n`.
    Dim {
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the estimators against closed forms.
    Validate {
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long, default_value_t = 10)]
        precision: usize,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("MFSPEC_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("MFSPEC_THREADS must be a positive integer, got '{v}'"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Run { config, output } => run_file(&config, output.as_deref(), false),
        Command::Dim { config, output } => run_file(&config, output.as_deref(), true),
        Command::Validate {
            suite,
            n,
            format,
            precision,
        } => {
            let outcome = run_suite(suite, n)?;
            let output = OutputConfig {
                path: None,
                format: match format {
                    FormatArg::Csv => Format::Csv,
                    FormatArg::Json => Format::Json,
                },
                precision,
            };
            write_outcome(&outcome, &output, None)?;
            Ok(outcome.status)
        }
    });
    match result {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
