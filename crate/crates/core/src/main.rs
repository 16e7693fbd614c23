use clap::Parser;
use hopfnil::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let out = execute(&cli.command);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
