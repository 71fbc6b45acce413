mod args;
mod commands;
mod failure;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use okubo_core::verify::DEFAULT_PRECISION;
use serde_json::Value;

use args::Cli;
use failure::{Failure, EXIT_ERROR};

const PRECISION_VAR: &str = "OKUBO_PRECISION";

fn precision() -> Result<f64, Failure> {
    match std::env::var(PRECISION_VAR) {
        Err(_) => Ok(DEFAULT_PRECISION),
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(Failure::new("invalid_input", format!("{PRECISION_VAR} must be a positive number, got {text:?}"))
                .with("env", PRECISION_VAR)),
        },
    }
}

fn emit(body: &Value, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(body).expect("json renders") + "\n";
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::new("io", format!("cannot write {}: {e}", path.display())).with("flag", "--out")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(f: Failure, subcommand: Option<&str>) -> ExitCode {
    let f = match subcommand {
        Some(name) if !f.context.contains_key("subcommand") => f.with("subcommand", name),
        _ => f,
    };
    println!("{}", serde_json::to_string_pretty(&f.to_json()).expect("json renders"));
    ExitCode::from(EXIT_ERROR as u8)
}

fn subcommand_name(cli: &Cli) -> String {
    format!("{:?}", cli.command)
        .split([' ', '(', '{'])
        .next()
        .unwrap_or_default()
        .chars()
        .enumerate()
        .flat_map(|(i, c)| {
            let lower = c.to_ascii_lowercase();
            if c.is_ascii_uppercase() && i > 0 { vec!['-', lower] } else { vec![lower] }
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let kind = format!("{:?}", e.kind());
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            let code = if e.kind() == ErrorKind::ValueValidation { "parse" } else { "usage" };
            return fail(Failure::new(code, first).with("kind", kind), None);
        }
    };
    let name = subcommand_name(&cli);
    let precision = match precision() {
        Ok(p) => p,
        Err(f) => return fail(f, Some(&name)),
    };
    let tol_override = std::env::var(PRECISION_VAR).ok().map(|_| precision);
    match commands::run(&cli.command, precision, tol_override) {
        Ok(outcome) => match emit(&outcome.body, cli.out.as_deref()) {
            Ok(()) => ExitCode::from(outcome.exit_code() as u8),
            Err(f) => fail(f, Some(&name)),
        },
        Err(f) => fail(f, Some(&name)),
    }
}
