use std::io::{stderr, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    let status = qwalk::cli::run(std::env::args_os(), &mut stdout().lock(), &mut stderr().lock());
    ExitCode::from(status as u8)
}
