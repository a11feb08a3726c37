use std::process::ExitCode;

fn main() -> ExitCode {
    tricolor::cli::run(std::env::args_os())
}
