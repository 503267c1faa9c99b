use std::process::ExitCode;

fn main() -> ExitCode {
    hstats_cli::run()
}
