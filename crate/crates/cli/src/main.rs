use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use toeplab_cli::config::{RunError, CONFIG_HELP};
use toeplab_cli::registry::{list_experiments, list_experiments_verbose};
use toeplab_cli::{run_file, RunOptions};

#[derive(Parser)]
#[command(name = "toeplab", version, about = "Run Toeplitz-operator convergence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment described by a JSON config file.
    #[command(after_help = CONFIG_HELP)]
    Run {
        /// JSON config file (keys below).
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Overrides `seed` from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for independent k values.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List the available experiments.
    List {
        /// Also print default parameters and tolerances.
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::List { verbose } => {
            if verbose {
                print!("{}", list_experiments_verbose());
            } else {
                print!("{}", list_experiments());
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            config,
            output_dir,
            seed,
            jobs,
        } => {
            let opts = RunOptions { seed, output_dir, jobs };
            match run_file(&config, &opts) {
                Ok((record, csv, json)) => {
                    for v in &record.outcome.verdicts {
                        println!(
                            "{} {}: observed {:.6e}, tolerance {}",
                            if v.pass { "PASS" } else { "FAIL" },
                            v.criterion,
                            v.observed,
                            v.tolerance
                        );
                    }
                    println!("wrote {}", csv.display());
                    println!("wrote {}", json.display());
                    if record.passed() {
                        println!("{}: pass", record.experiment);
                        ExitCode::SUCCESS
                    } else {
                        println!("{}: fail", record.experiment);
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("toeplab: {e}");
                    match e {
                        RunError::Compute(_) => ExitCode::from(1),
                        RunError::Config(_) | RunError::Io(_) => ExitCode::from(2),
                    }
                }
            }
        }
    }
}
