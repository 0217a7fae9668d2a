use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (out, err) = theta_forge::cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    if !err.is_empty() {
        eprint!("{err}");
    }
    ExitCode::from(out.code as u8)
}
