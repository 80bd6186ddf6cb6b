use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use su2w_cli::{execute, output_path, Cli, EXIT_FAILURE, EXIT_INVALID, EXIT_OK};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INVALID as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("su2w: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match output_path(&cli.command) {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("su2w: cannot write output: {e}");
        return ExitCode::from(EXIT_FAILURE as u8);
    }
    ExitCode::from(if outcome.ok { EXIT_OK } else { EXIT_FAILURE } as u8)
}
