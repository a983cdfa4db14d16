use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(triflow::cli::main_with(std::env::args()))
}
