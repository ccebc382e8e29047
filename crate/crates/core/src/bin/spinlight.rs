//! `spinlight <command> --config <file> [--out <path>] [--format csv|json]`
//!
//! Exit codes: 0 success, 1 output I/O failure, 2 configuration error,
//! 3 physics-domain error, 4 numerical failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use spinlight_core::cli::{self, Command, Context, Format, ScenarioFile};
use spinlight_core::gem::SourceCatalog;
use spinlight_core::Error;

#[derive(Parser)]
#[command(name = "spinlight", version, about = "Spin-rotation and spin-gravity coupling of light")]
struct Args {
    /// Computation to run; reads the table of the same name from the scenario.
    #[arg(value_enum)]
    command: Command,
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; overrides the scenario's [output] format.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
}

fn execute(args: &Args) -> Result<(String, Option<PathBuf>), Error> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let scenario = ScenarioFile::parse(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", args.config.display())))?;
    let output = scenario.output.clone().unwrap_or_default();
    let format: Format = args
        .format
        .as_deref()
        .or(output.format.as_deref())
        .unwrap_or("csv")
        .parse()?;
    let base_dir = args.config.parent().unwrap_or(Path::new("."));
    let catalog = SourceCatalog::from_env()?;
    let ctx = Context {
        constants: scenario.constants()?,
        catalog: &catalog,
        base_dir,
    };
    let table = cli::run(args.command, &scenario, &ctx)?;
    let out = args.out.clone().or_else(|| output.path.map(|p| base_dir.join(p)));
    Ok((table.render(format), out))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match execute(&args) {
        Ok((rendered, None)) => {
            print!("{rendered}");
            ExitCode::SUCCESS
        }
        Ok((rendered, Some(path))) => match std::fs::write(&path, rendered) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("spinlight: cannot write {}: {e}", path.display());
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("spinlight: {e}");
            ExitCode::from(e.class().exit_code() as u8)
        }
    }
}
