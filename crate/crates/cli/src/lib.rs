//! The `hetcat` command line: structure documents in, deterministic reports
//! and Graphviz diagrams out.

pub mod args;
pub mod commands;
pub mod coverage;
pub mod dot;
pub mod error;
pub mod report;
pub mod spec;

use std::fs;
use std::time::Instant;

use hetcat_core::Limits;

use crate::args::{Cli, Command, Format};
use crate::error::CliError;
use crate::report::{Report, Verdict};
use crate::spec::Loader;

/// What one invocation prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn limits_for(cli: &Cli) -> Limits {
    let mut limits = Limits::default();
    if let Some(n) = cli.cap_objects {
        limits.max_elements = n;
    }
    if let Some(n) = cli.cap_depth {
        limits.max_depth = n;
    }
    limits
}

fn subject(cli: &Cli) -> String {
    commands::subject(&cli.command)
}

fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Both => format!("{}\n{}", report.to_text(), report.to_json()),
    }
}

fn execute(cli: &Cli) -> Result<(Report, Option<String>), CliError> {
    let loader = Loader::new(limits_for(cli));
    match &cli.command {
        Command::Check(c) => Ok((commands::check(c, &loader, subject(cli))?, None)),
        Command::Demo(d) => Ok((commands::demo(d, &loader, subject(cli))?, None)),
        Command::Render(r) => {
            let (dot, report) = commands::render(&r.file, &loader, subject(cli))?;
            Ok((report, Some(dot)))
        }
    }
}

/// Runs one parsed command line inside a thread pool of `--jobs` workers.
pub fn run(cli: &Cli) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: cannot start worker threads: {e}\n"),
                code: 2,
            }
        }
    };
    let start = Instant::now();
    let result = pool.install(|| execute(cli));
    let elapsed = start.elapsed();
    let (mut report, dot) = match result {
        Ok(r) => r,
        Err(e) => {
            let report = Report::error(subject(cli), &e);
            return Outcome {
                stdout: emit(&report, cli.format),
                stderr: format!("error: {e}\n"),
                code: 2,
            };
        }
    };
    if cli.timing {
        report.stat("elapsed_ms", elapsed.as_millis() as usize);
    }
    let code = report.verdict.exit_code();
    let mut stdout = String::new();
    match (dot, &cli.command) {
        (Some(dot), Command::Render(r)) if report.verdict == Verdict::Pass => match &r.out {
            Some(path) => {
                if let Err(e) = fs::write(path, &dot) {
                    let err = CliError::Io {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    };
                    return Outcome {
                        stdout: emit(&Report::error(subject(cli), &err), cli.format),
                        stderr: format!("error: {err}\n"),
                        code: 2,
                    };
                }
                report.detail(format!("diagram written to {}", path.display()));
                stdout = emit(&report, cli.format);
            }
            None => stdout = dot,
        },
        _ => stdout.push_str(&emit(&report, cli.format)),
    }
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}
