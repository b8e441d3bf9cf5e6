use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use oslcm::args::Cli;
use oslcm::commands;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            // Help and version requests are not errors.
            return ExitCode::from(if err.use_stderr() { 1 } else { 0 });
        }
    };

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = commands::run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(code) => {
            if let Err(err) = flushed {
                if err.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: writing output: {err}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
