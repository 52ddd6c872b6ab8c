use std::process::ExitCode;

fn main() -> ExitCode {
    combgenus::cli::app::main_with_args(std::env::args_os())
}
