use clap::Parser;
use hecke::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("hecke: {e}");
        std::process::exit(e.exit_code());
    }
}
