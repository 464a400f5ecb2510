use std::process::ExitCode;

fn main() -> ExitCode {
    monotest::cli::main()
}
