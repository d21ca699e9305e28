use std::process::ExitCode;

fn main() -> ExitCode {
    cihom::cli::main()
}
