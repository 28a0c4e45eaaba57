use std::process::ExitCode;

fn main() -> ExitCode {
    let args = std::env::args_os().collect();
    ExitCode::from(antiplane_cli::run_cli(args) as u8)
}
