use std::process::ExitCode;

fn main() -> ExitCode {
    finsnell_cli::run(std::env::args_os())
}
