use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use pplab::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
