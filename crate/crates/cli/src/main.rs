use std::process::ExitCode;

fn main() -> ExitCode {
    ugs_pursuit_cli::main_with(std::env::args())
}
