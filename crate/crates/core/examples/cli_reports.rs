//! Driving the command-line layer in-process and reading its JSON report.

use meanlab::cli::run_command;

fn main() {
    let x = r#"{"dim":2,"rows":[[2,0.5],[0.5,1]]}"#;
    let y = r#"{"dim":2,"rows":[[3,0.75],[0.75,1.5]]}"#;
    let out = run_command(["meanlab", "inverse", "--problem", "sqrt-arith", "-X", x, "-Y", y]);
    println!("exit code {}", out.code);
    if let Some(report) = out.report {
        println!("{}", report.to_json());
    }
}
