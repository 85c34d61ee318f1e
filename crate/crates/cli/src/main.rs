use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mutvis::commands;
use mutvis::format::to_text;
use mutvis::{exit, CliError};

#[derive(Parser)]
#[command(
    name = "mutvis",
    version,
    about = "Move robots along shortest paths while keeping them mutually visible"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a non-crossing instance.
    Solve {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a solution against its instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        /// Samples per step, endpoints included.
        #[arg(long, default_value_t = mutvis_core::verifier::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Generate a random non-crossing instance.
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        robots: usize,
        /// Overridden by MUTVIS_SEED.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Draw an instance, and optionally a solution, as SVG.
    Render {
        instance: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Analyze a crossing instance.
    Analyze {
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        angular_steps: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { input, output } => {
            let sol = commands::cmd_solve(&input, &output)?;
            println!(
                "solved: {} steps, {} robots",
                sol.steps(),
                sol.trajectories.len()
            );
        }
        Command::Verify {
            instance,
            solution,
            samples,
        } => {
            let report = commands::cmd_verify(&instance, &solution, samples)?;
            print!("{}", to_text(&report));
        }
        Command::Gen {
            vertices,
            robots,
            seed,
            output,
        } => {
            let seed = commands::effective_seed(seed)?;
            commands::cmd_gen(vertices, robots, seed, &output)?;
        }
        Command::Render {
            instance,
            solution,
            output,
        } => {
            commands::cmd_render(&instance, solution.as_deref(), &output)?;
        }
        Command::Analyze {
            input,
            angular_steps,
            output,
        } => {
            commands::cmd_analyze(&input, angular_steps, &output)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Exit code 2 belongs to crossing mismatches.
            return ExitCode::from(if e.use_stderr() {
                exit::PARSE as u8
            } else {
                exit::OK as u8
            });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            match &e {
                CliError::Crossing(v) | CliError::Verification(v) => eprint!("{}", to_text(v)),
                other => eprintln!("mutvis: {other}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
