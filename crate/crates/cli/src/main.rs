use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hetcat_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = hetcat_cli::run(&cli);
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    ExitCode::from(out.code as u8)
}
