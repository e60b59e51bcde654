use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(giantcomp_cli::run(std::env::args_os()))
}
