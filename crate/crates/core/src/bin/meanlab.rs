use std::io::Write;
use std::process::ExitCode;

use meanlab::cli::{run_command, EXIT_INPUT};

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var("MEANLAB_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("meanlab: cannot configure thread pool: {e}");
                    return ExitCode::from(EXIT_INPUT as u8);
                }
            }
            _ => {
                eprintln!("meanlab: MEANLAB_THREADS must be an integer >= 1, got '{raw}'");
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
    }
    let outcome = run_command(std::env::args_os());
    if let Some(msg) = &outcome.message {
        if outcome.report.is_none() && outcome.code == 0 {
            print!("{msg}");
        } else {
            eprintln!("{}", msg.trim_end());
        }
    }
    if let Some(report) = &outcome.report {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{}", report.to_json());
    }
    ExitCode::from(outcome.code as u8)
}
