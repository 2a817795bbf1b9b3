use clap::{Parser, Subcommand};
use std::process::ExitCode;
use twistfold_cli::cli_frontend::commands::{self, Options, Output};
use twistfold_cli::cli_frontend::Format;

/// Exact twist deformations of level-set geometry.
#[derive(Parser)]
#[command(name = "twistfold", version)]
struct Cli {
    /// Highest power of nu retained (overrides the setup).
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Seed for randomized checks (overrides the setup).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format: human or structured.
    #[arg(long, global = true, default_value = "human")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check counitality, the 2-cocycle condition and unitarity of the twist.
    CheckTwist {
        /// Scenario file, or cylinder | hyperboloid | cone.
        setup: String,
        /// Maximal degree of the monomials tested.
        #[arg(long, default_value_t = 3)]
        degree: u64,
    },
    /// Print the star product of two expressions.
    Star { setup: String, a: String, b: String },
    /// Split a vector field or form into tangent and normal parts.
    Project { setup: String, expr: String },
    /// Print second fundamental forms, principal curvatures and Ricci scalars.
    Curvature { setup: String },
    /// Check the twisted Gauss theorem on random tangent quadruples.
    VerifyGauss {
        setup: String,
        #[arg(long, default_value_t = 25)]
        count: u64,
    },
    /// Run every check of a scenario file.
    Run { scenario: String },
    /// Evaluate expressions read from standard input.
    Repl { setup: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { order: cli.order, seed: cli.seed, format: cli.format };
    let result = match &cli.command {
        Command::CheckTwist { setup, degree } => commands::check_twist(setup, *degree, &opts),
        Command::Star { setup, a, b } => commands::star(setup, a, b, &opts),
        Command::Project { setup, expr } => commands::project(setup, expr, &opts),
        Command::Curvature { setup } => commands::curvature(setup, &opts),
        Command::VerifyGauss { setup, count } => commands::verify_gauss(setup, *count, &opts),
        Command::Run { scenario } => commands::run(scenario, &opts),
        Command::Repl { setup } => {
            let stdin = std::io::stdin();
            commands::repl(setup, &opts, stdin.lock(), std::io::stdout()).map(|ok| Output { text: String::new(), ok })
        }
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
