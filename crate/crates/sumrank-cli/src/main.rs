mod args;
mod commands;
mod error;
mod verify;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult};

fn run(cli: Cli) -> CliResult<()> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let budget = cli.budget.unwrap_or_else(sumrank::sum_rank::budget);
    match &cli.command {
        Command::Tower(a) => commands::emit(None, &commands::tower(a)?),
        Command::Table(a) => commands::table(a),
        Command::Construct(a) => commands::construct(a),
        Command::Encode(a) => commands::emit(None, &commands::encode(a)?),
        Command::Decode(a) => commands::emit(None, &commands::decode(a, budget)?),
        Command::Mindist(a) => commands::emit(None, &commands::mindist(a, budget)?),
        Command::Verify(a) => {
            let t = commands::build_tower(&a.tower)?;
            let report = verify::run(t, budget, a.trials, a.seed);
            commands::emit(None, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            match report.failures {
                0 => Ok(()),
                k => Err(CliError::ChecksFailed(k)),
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{}", e.to_json());
        std::process::exit(e.exit_code());
    }
}
