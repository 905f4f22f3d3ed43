use clap::Parser;
use kpoisson::cli::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    let report = run(&cli.command);
    print!("{}", render(&report, cli.command.args().format));
    std::process::exit(report.exit_code);
}
