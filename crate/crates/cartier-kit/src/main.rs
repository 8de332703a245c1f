use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cartier_kit::cli::run())
}
