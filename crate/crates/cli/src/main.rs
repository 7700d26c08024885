//! `nbunique`: neighborhood-uniqueness analysis from the command line.

mod commands;
mod error;
mod output;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{value_parser, Arg, ArgMatches, Command};

use error::CliError;
use output::Sink;

fn arg(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).long(name).help(help)
}

fn model_args(cmd: Command) -> Command {
    cmd.arg(
        arg("model", "Network model")
            .value_parser(["er", "ws", "rgg"])
            .default_value("er"),
    )
    .arg(arg("beta", "Watts-Strogatz rewiring probability").default_value("0.5"))
}

fn seed_arg() -> Arg {
    arg("seed", "Master seed; drawn at random and recorded when omitted")
}

fn input_arg() -> Arg {
    arg("input", "Edge list file (required)")
}

pub fn command() -> Command {
    Command::new("nbunique")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Re-identification risk of nodes from their neighborhood structure")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(
            arg("out", "Write artifacts and a run manifest into this directory")
                .global(true)
                .value_parser(value_parser!(PathBuf)),
        )
        .arg(
            arg("config", "TOML key-value file or run manifest supplying parameters")
                .global(true)
                .value_parser(value_parser!(PathBuf)),
        )
        .arg(
            arg("jobs", "Worker threads")
                .global(true)
                .env("NBUNIQUE_JOBS")
                .value_parser(value_parser!(usize)),
        )
        .subcommand(
            Command::new("analyze")
                .about("Uniqueness report for an edge list")
                .arg(input_arg()),
        )
        .subcommand(model_args(
            Command::new("generate")
                .about("Generate a model network as an edge list")
                .arg(arg("n", "Number of nodes (required)"))
                .arg(arg("k", "Average degree (required)"))
                .arg(seed_arg()),
        ))
        .subcommand(
            Command::new("er-curve")
                .about("Closed-form Erdős–Rényi degree uniqueness and non-empty fraction")
                .arg(arg("n", "Number of nodes (required)"))
                .arg(arg("k-grid", "Average degrees (default 0..min(100, n-1))")),
        )
        .subcommand(model_args(
            Command::new("map")
                .about("Mean uniqueness over a grid of sizes and average degrees")
                .arg(arg("n-grid", "Network sizes, e.g. 100:20000:log10 (required)"))
                .arg(arg("k-grid", "Average degrees").default_value("1:100"))
                .arg(arg("reps", "Networks per cell").default_value("10"))
                .arg(seed_arg()),
        ))
        .subcommand(model_args(
            Command::new("boundary")
                .about("Stochastic search for the uniqueness boundary and its log-log fit")
                .arg(arg("n-grid", "Network sizes").default_value("1000,2000,5000,10000"))
                .arg(arg("target", "Target uniqueness").default_value("0.5"))
                .arg(arg("tol", "Tolerance on the target").default_value("0.02"))
                .arg(arg("confidence", "Confidence level").default_value("0.99"))
                .arg(arg("batch", "Networks per batch").default_value("5"))
                .arg(arg("max-sims", "Maximum networks per evaluated degree").default_value("30"))
                .arg(arg("k-lo", "Lower end of the degree interval").default_value("1"))
                .arg(arg("k-hi", "Upper end of the degree interval").default_value("100"))
                .arg(arg("min-width", "Smallest degree interval").default_value("0.05"))
                .arg(seed_arg()),
        ))
        .subcommand(
            Command::new("sample")
                .about("Uniform random edge sampling")
                .arg(input_arg())
                .arg(arg("rate", "Sampling rate in (0, 1] (required)"))
                .arg(
                    arg("mode", "Sampling mode")
                        .value_parser(["bernoulli", "exact-count"])
                        .default_value("bernoulli"),
                )
                .arg(seed_arg()),
        )
        .subcommand(
            Command::new("sampling-report")
                .about("Uniqueness and estimator errors across sampling rates")
                .arg(input_arg())
                .arg(arg("rates", "Sampling rates (default 1.0, 0.9, ..., 0.1)"))
                .arg(
                    arg("mode", "Sampling mode")
                        .value_parser(["bernoulli", "exact-count"])
                        .default_value("bernoulli"),
                )
                .arg(arg("trials", "Sampling draws per rate").default_value("5"))
                .arg(seed_arg()),
        )
}

fn run(matches: &ArgMatches) -> Result<(), CliError> {
    let (name, sub) = matches.subcommand().expect("subcommand required");
    if let Some(&jobs) = sub.get_one::<usize>("jobs") {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Run(e.to_string()))?;
    }
    let config = match sub.get_one::<PathBuf>("config") {
        Some(path) => params::load_config(path, name)?,
        None => Default::default(),
    };
    let cmd = command();
    let spec = cmd.find_subcommand(name).expect("known subcommand");
    let mut params = params::resolve(spec, sub, config)?;
    let mut sink = Sink::new(sub.get_one::<PathBuf>("out").cloned())?;
    let seed = commands::dispatch(name, &mut params, &mut sink)?;
    sink.finish(name, &params, seed)
}

fn main() -> ExitCode {
    let matches = command().get_matches();
    match run(&matches) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nbunique: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
