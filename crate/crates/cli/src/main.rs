use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use surreal_cli::commands::{
    cmd_cases, cmd_eval, cmd_mix, cmd_solve, cmd_vnm_check, cmd_vnm_construct, CliError,
    CommandOutput, GlobalOptions,
};

/// Exact surreal-number calculator and transfinite decision solver.
///
/// All values are exact: utilities, credences, and expected utilities are
/// surreal numbers in finite normal form, and every comparison is decided
/// symbolically. Flags have `SURREAL_*` environment variable equivalents.
#[derive(Parser)]
#[command(name = "surreal", version)]
struct Cli {
    /// Emit line-oriented key=value records instead of tables
    #[arg(long, global = true, env = "SURREAL_MACHINE")]
    machine: bool,

    /// Exponent nesting bound for parsed literals
    #[arg(long, global = true, env = "SURREAL_DEPTH", default_value_t = surreal_core::DEFAULT_DEPTH_BOUND)]
    depth: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a surreal expression and print value, class, standard part
    Eval {
        expr: String,
        /// Return truncated quotients (flagged) instead of erroring on
        /// inexact division
        #[arg(long, env = "SURREAL_TRUNCATE")]
        truncate: Option<usize>,
    },
    /// Solve decision-problem files: EU table, ranking, dominance matrix
    Solve {
        files: Vec<PathBuf>,
        /// Additionally require regular credences (no zero-probability
        /// states)
        #[arg(long, env = "SURREAL_REQUIRE_REGULARITY")]
        require_regularity: bool,
    },
    /// Sweep a mixture grid against the best pure action
    Mix {
        files: Vec<PathBuf>,
        /// Dyadic grid resolution for two-action problems
        #[arg(long, env = "SURREAL_GRID", default_value_t = 32)]
        grid: u32,
    },
    /// Check preference axioms or construct a utility from a file
    Vnm {
        #[command(subcommand)]
        command: VnmCommand,
    },
    /// Run the built-in worked cases and the exactness control
    Cases {
        /// Substring filter on case names
        filter: Option<String>,
        /// Perturb expected values by 1/w; the run must then fail
        #[arg(long)]
        perturb: bool,
    },
}

#[derive(Subcommand)]
enum VnmCommand {
    /// Check completeness, transitivity, continuity, independence
    Check { file: PathBuf },
    /// Construct a utility assignment over the sampled lotteries
    Construct { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = GlobalOptions {
        machine: cli.machine,
        depth_bound: cli.depth,
    };
    let result: Result<CommandOutput, CliError> = match &cli.command {
        Command::Eval { expr, truncate } => cmd_eval(expr, *truncate, &global),
        Command::Solve {
            files,
            require_regularity,
        } => cmd_solve(files, *require_regularity, &global),
        Command::Mix { files, grid } => cmd_mix(files, *grid, &global),
        Command::Vnm { command } => match command {
            VnmCommand::Check { file } => cmd_vnm_check(file, &global),
            VnmCommand::Construct { file } => cmd_vnm_construct(file, &global),
        },
        Command::Cases { filter, perturb } => cmd_cases(filter.as_deref(), *perturb, &global),
    };
    match result {
        Ok(output) => {
            print!("{}", output.stdout);
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}
