use std::process::ExitCode;

fn main() -> ExitCode {
    scgrowth::cli::run()
}
