use std::process::ExitCode;

use clap::Parser;
use nclab::cli::{exit_code, run, Cli, RunConfig, DIM_ENV};

fn main() -> ExitCode {
    // clap exits with status 2 on flag errors.
    let cli = Cli::parse();
    let env_dim = std::env::var(DIM_ENV).ok();
    let config = match RunConfig::from_cli(cli, env_dim.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let artifact = match run(&config) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let written = match &config.output_path {
        Some(path) => std::fs::write(path, artifact),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(artifact.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
