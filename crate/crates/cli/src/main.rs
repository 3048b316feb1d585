use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = carlitz_cli::run(std::env::args());
    for d in &result.diagnostics {
        eprintln!("{d}");
    }
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(result.payload.as_bytes());
    if !result.payload.ends_with('\n') && !result.payload.is_empty() {
        let _ = writeln!(out);
    }
    ExitCode::from(result.exit_code as u8)
}
