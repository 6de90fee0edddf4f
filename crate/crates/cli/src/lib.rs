//! The `halfgap` command line.

pub mod args;
pub mod bench;
mod commands;
mod sq_commands;

use std::ffi::OsString;
use std::path::Path;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command, Format};

/// Input or usage error.
pub const EXIT_INPUT: i32 = 2;
/// Internal invariant violation.
pub const EXIT_INTERNAL: i32 = 3;

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    halfgap_core::io::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Exit code for an error chain: internal core errors map to 3, all else 2.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let internal = err.chain().any(|e| {
        e.downcast_ref::<halfgap_core::Error>().is_some_and(halfgap_core::Error::is_internal)
    });
    if internal {
        EXIT_INTERNAL
    } else {
        EXIT_INPUT
    }
}

fn dispatch(cli: Cli) -> Result<String> {
    let g = &cli.global;
    match cli.command {
        Command::GenKsum { n, k, planted } => commands::gen_ksum(g, n, k, planted),
        Command::SolveKsum { ksum, method } => commands::solve_ksum(g, &ksum, method),
        Command::Reduce { ksum } => commands::reduce(g, &ksum),
        Command::VerifyGap { source, cap } => commands::verify_gap(g, &source, cap),
        Command::Decide { source, solver, eps, delta } => {
            commands::decide(g, &source, solver, eps.as_deref(), &delta)
        }
        Command::DistExact { dataset, method, cap } => commands::dist_exact(g, &dataset, method, cap),
        Command::DistEst { dataset, eps, delta } => commands::dist_est(g, &dataset, &eps, &delta),
        Command::Bench { task, sizes, k, d, reps, svg } => {
            commands::bench(g, task, &sizes, k, d, reps, svg.as_deref())
        }
        Command::SqPack { d, m, threshold, retries, trials } => {
            sq_commands::pack(g, d, m, threshold, retries, trials)
        }
        Command::SqF0 { d, m, tau, queries, num_queries, references, assignment } => sq_commands::f0(
            g,
            sq_commands::F0Args {
                d,
                m,
                tau,
                queries: queries.as_deref(),
                num_queries,
                references: references.as_deref(),
                assignment: assignment.as_deref(),
            },
        ),
        Command::SqAdversary { s, d, m, algorithm, queries, eps, trials } => {
            sq_commands::adversary(g, s, d, m, algorithm, queries, eps, trials)
        }
        Command::SqAngles { d, n, trials } => sq_commands::angles(g, d, n, trials),
    }
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let out = cli.global.out.clone();
    match dispatch(cli).and_then(|text| emit(out.as_deref(), &text)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

pub(crate) fn format_or(g: &args::Global, default: Format) -> Format {
    g.format.unwrap_or(default)
}
