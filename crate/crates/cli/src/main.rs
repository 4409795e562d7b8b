mod commands;
mod opts;
mod report;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use truncgr_core::Error;

use commands::Failure;
use opts::{Cli, Format};
use report::{Report, Status, Table};

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let mut opts = match &cli.opts.config {
        Some(path) => match opts::load_config(path) {
            Ok(file) => cli.opts.clone().or(file),
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(USAGE);
            }
        },
        None => cli.opts.clone(),
    };
    let format = *opts.format.get_or_insert(Format::Json);

    let (status, result, table) = match commands::run(cli.command, &mut opts) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(USAGE);
        }
        Err(Failure::Core(e)) => {
            let status = match &e {
                Error::Diverged { .. } => Status::Diverged,
                Error::InvalidParameters(_)
                | Error::DimensionMismatch(_)
                | Error::TooManyVariables { .. }
                | Error::NotInSchubert { .. }
                | Error::Parse(_) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
                _ => Status::Fail,
            };
            let mut table = Table::new(&["error"]);
            table.push(vec![e.to_string()]);
            (status, json!({ "error": e.to_string() }), table)
        }
    };

    let out = opts.out.clone();
    let report = Report { command: cli.command.name(), version: truncgr_core::VERSION, config: opts, status, result, table };
    let text = report.render(format);
    match out {
        Some(path) => {
            if let Err(e) = report::write_atomic(&path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if status != Status::Pass {
        eprintln!("{}: {}", cli.command.name(), serde_json::to_value(status).unwrap().as_str().unwrap_or(""));
    }
    ExitCode::from(status.exit_code() as u8)
}
