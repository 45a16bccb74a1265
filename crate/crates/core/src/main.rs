use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gjps::cli::main_with_args(std::env::args_os()))
}
