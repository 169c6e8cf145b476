use std::process::ExitCode;

fn main() -> ExitCode {
    braid3::cli::main_with_args(std::env::args_os())
}
