use clap::Parser;

fn main() -> std::process::ExitCode {
    loewner_cli::run(loewner_cli::Cli::parse())
}
