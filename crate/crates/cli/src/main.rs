use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grint::algebra::bratteli;
use grint::rep::powers_via_rep;
use grint_cli::{analyze, dynamics, ktheory, load_graph, powers, powers_with, render_text, to_json, verification};
use grint_cli::{CliError, CliResult, Outcome, Settings};

/// Exact analysis of graph interactions, their C*-algebras and K-theory.
#[derive(Parser)]
#[command(name = "grint", version)]
struct Cli {
    /// Require every vertex to be declared before it is used.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Tuning {
    /// Largest power n for the interaction-power tests.
    #[arg(long, default_value_t = 6)]
    max_power: usize,
    /// Highest core level for the axiom suite.
    #[arg(long, default_value_t = 2)]
    level: usize,
    /// Depth of the truncated path-space representation.
    #[arg(long, default_value_t = 4)]
    depth: usize,
}

impl Tuning {
    fn settings(&self) -> Settings {
        Settings {
            max_power: self.max_power,
            level: self.level,
            depth: self.depth,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full report: structure, dynamics, K-theory and verification.
    Analyze {
        file: PathBuf,
        /// Emit JSON (the default).
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Emit a short human-readable summary.
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// The Bratteli diagram of the core as DOT.
    Bratteli {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Write the DOT output here instead of standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Interaction powers by three independent criteria.
    Powers {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_power: usize,
        /// Flip the operator criterion at `--max-power` to exercise the
        /// disagreement exit path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// K_0 and K_1 of the graph algebra, with the cross-check.
    Ktheory {
        file: PathBuf,
        /// Also print the presentation of K_0 of the core truncated here.
        #[arg(long)]
        presentation: Option<usize>,
    },
    /// Exit-free loops, periodic orbits and, optionally, one point.
    Dynamics {
        file: PathBuf,
        /// A point: `e1.e2!` (sink path), `e1.(e2.e3)*` (eventually periodic).
        #[arg(long)]
        point: Option<String>,
        /// Levels of the ancestor diagram and basis sets.
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    /// Axiom suite and operator oracle; exit code 3 on any failure.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

/// Writes to standard output; a closed pipe is not an error of the analysis.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit<T: serde::Serialize>(out: Outcome<T>) -> CliResult<()> {
    say(&(out.json() + "\n"));
    finish(out.failures)
}

fn finish(failures: Vec<String>) -> CliResult<()> {
    match failures.first() {
        None => Ok(()),
        Some(_) => Err(CliError::Mismatch(failures.join("; "))),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let strict = cli.strict;
    match cli.command {
        Command::Analyze { file, text, tuning, .. } => {
            let g = load_graph(&file, strict)?;
            let out = analyze(&g, &tuning.settings())?;
            if text {
                say(&render_text(&out.report));
                finish(out.failures)
            } else {
                emit(out)
            }
        }
        Command::Bratteli { file, levels, dot } => {
            let g = load_graph(&file, strict)?;
            let text = bratteli(&g, levels)?.to_dot();
            match dot {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Args(format!("cannot write {}: {e}", path.display()))),
                None => {
                    say(&text);
                    Ok(())
                }
            }
        }
        Command::Powers {
            file,
            max_power,
            inject_fault,
        } => {
            let g = load_graph(&file, strict)?;
            if inject_fault {
                emit(powers_with(&g, max_power, |g, n| {
                    let mut members = powers_via_rep(g, n)?;
                    match members.iter().position(|&k| k == n) {
                        Some(i) => {
                            members.remove(i);
                        }
                        None => members.push(n),
                    }
                    Ok(members)
                })?)
            } else {
                emit(powers(&g, max_power)?)
            }
        }
        Command::Ktheory { file, presentation } => emit(ktheory(&load_graph(&file, strict)?, presentation)?),
        Command::Dynamics { file, point, levels } => {
            let g = load_graph(&file, strict)?;
            say(&(to_json(&dynamics(&g, point.as_deref(), levels)?) + "\n"));
            Ok(())
        }
        Command::Verify { file, level, depth } => {
            let g = load_graph(&file, strict)?;
            let settings = Settings {
                level,
                depth,
                ..Settings::default()
            };
            emit(verification(&g, &settings)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("grint: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
