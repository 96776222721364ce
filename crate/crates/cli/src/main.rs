use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use seqspace_cli::{execute, Cli, CliError};

fn run() -> Result<u8, CliError> {
    let cli = Cli::parse();
    let save = cli.global.save_job.clone();
    let job = cli.into_job()?;
    if let Some(path) = save {
        let text = serde_json::to_string_pretty(&job).expect("job specs serialize");
        std::fs::write(&path, text).map_err(|e| CliError::io(Path::new(&path), e))?;
    }
    execute(&job)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
