use std::io::Write;
use std::process::ExitCode;

use polarcheck_cli::{run, RunConfig, EXIT_INVALID};

fn main() -> ExitCode {
    let config = match RunConfig::parse_from(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID as u8 } else { 0 });
        }
    };
    let outcome = run(&config);
    eprint!("{}", outcome.diagnostics);
    if !outcome.report.is_empty() {
        match &config.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &outcome.report) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_INVALID as u8);
                }
            }
            None => {
                let _ = std::io::stdout().write_all(outcome.report.as_bytes());
            }
        }
    }
    ExitCode::from(outcome.code as u8)
}
