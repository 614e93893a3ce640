use std::io::Write;
use std::process::ExitCode;

use magnus_core::cli::{run, Caps};

fn main() -> ExitCode {
    let (code, out, err) = run(std::env::args_os(), Caps::from_env());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
