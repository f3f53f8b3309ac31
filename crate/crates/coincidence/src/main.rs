use clap::Parser;
use coincidence::cli::{run, Cli, Outcome};

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    match &outcome {
        Outcome::Ok(text) | Outcome::CheckFailed(text) => print!("{text}"),
        Outcome::Invalid(message) => eprintln!("error: {message}"),
    }
    outcome.exit_code()
}
