use std::process::ExitCode;

fn main() -> ExitCode {
    bn_strings::cli::run()
}
