use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = moran_cli::execute(std::env::args_os());
    if !outcome.stderr.is_empty() {
        let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(&outcome.stdout).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.status)
}
