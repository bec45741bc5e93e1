use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use adgraph::commands::{self, build, render_check, render_value, Mode};
use adgraph::{dot, parse_bindings, trace, CliError, Notation};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "adgraph",
    version,
    about = "Evaluate and differentiate scalar expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Expression, e.g. "log(x1) + x1*x2 - sin(x2)".
    #[arg(allow_hyphen_values = true)]
    expr: String,
    /// Variable values as comma-separated name=value pairs.
    #[arg(long, value_name = "NAME=VALUE,...")]
    at: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the value of the expression.
    Eval {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Print partial derivatives with respect to the variables.
    Grad {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "reverse")]
        mode: Mode,
        /// Variable to differentiate against (forward mode only).
        #[arg(long)]
        wrt: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the primal and derivative trace table.
    Trace {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "reverse")]
        mode: Mode,
        /// Seed variable for a forward trace.
        #[arg(long)]
        wrt: Option<String>,
        /// Use dot and bar accents and × instead of d(), bar() and *.
        #[arg(long)]
        unicode: bool,
        #[arg(long)]
        json: bool,
    },
    /// Export the computational graph in Graphviz format.
    Dot {
        #[command(flatten)]
        input: Input,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the reverse-mode gradient with central finite differences.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1e-5, allow_negative_numbers = true)]
        tolerance: f64,
        #[arg(long)]
        json: bool,
    },
}

enum Outcome {
    Success,
    CheckFailed,
}

fn run(command: Command) -> Result<Outcome, CliError> {
    let mut outcome = Outcome::Success;
    let text = match command {
        Command::Eval { input, json } => {
            let value = commands::evaluate(&input.expr, &parse_bindings(&input.at)?)?;
            render_value(value, json)
        }
        Command::Grad {
            input,
            mode,
            wrt,
            json,
        } => {
            let bindings = parse_bindings(&input.at)?;
            commands::gradient(&input.expr, &bindings, mode, wrt.as_deref())?.render(json)
        }
        Command::Trace {
            input,
            mode,
            wrt,
            unicode,
            json,
        } => {
            let notation = if unicode {
                Notation::Unicode
            } else {
                Notation::Ascii
            };
            let bindings = parse_bindings(&input.at)?;
            let rows = trace::trace(&input.expr, &bindings, mode, wrt.as_deref(), notation)?;
            trace::render(&rows, json)
        }
        Command::Dot { input, output } => {
            let (graph, _) = build(&input.expr, &parse_bindings(&input.at)?)?;
            let text = dot::to_dot(&graph);
            if let Some(path) = output {
                fs::write(&path, text).map_err(|source| CliError::Write { path, source })?;
                return Ok(outcome);
            }
            io::stdout().write_all(text.as_bytes()).ok();
            return Ok(outcome);
        }
        Command::Check {
            input,
            tolerance,
            json,
        } => {
            let report = commands::check(&input.expr, &parse_bindings(&input.at)?, tolerance)?;
            if !report.pass {
                outcome = Outcome::CheckFailed;
            }
            render_check(&report, json)
        }
    };
    if !text.is_empty() {
        println!("{text}");
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("adgraph: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
