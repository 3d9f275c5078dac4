use clap::Parser;
use sideband_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            if let Some(m) = outcome.message {
                eprintln!("{m}");
            }
            std::process::exit(outcome.status);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
