use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use empeq::document::{
    cmd_build, cmd_check_scf, cmd_classify_eq, cmd_qre_trace, parse_grid, parse_prior,
    parse_priorities, parse_schedule, BuildParams, CommandOutput, DocumentError, GameDocument,
};
use empeq::parse_rational;
use empeq::solvers::HomotopySchedule;

#[derive(Parser)]
#[command(
    name = "empeq",
    version,
    about = "Empirical equilibrium analysis of finite mechanisms"
)]
struct Cli {
    /// Logistic path schedule as `λ0,ρ,steps` (λ0 = 0 keeps the default start).
    #[arg(long, global = true, value_name = "λ0,ρ,STEPS")]
    schedule: Option<String>,
    /// Limit tolerance for traces, numerical tolerance for classification.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for random priors.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for checks over several inputs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Exit with status 1 when an analysis comes out negative.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the game document of a named mechanism.
    Build(BuildArgs),
    /// Check strategy-proofness, dominance uniqueness, non-bossiness and rectangularity.
    CheckScf {
        /// Revelation-form game documents.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Trace the logistic quantal response path; CSV rows then a JSON summary line.
    QreTrace { input: PathBuf },
    /// Classify a strategy profile of a game.
    ClassifyEq { input: PathBuf, profile: PathBuf },
}

#[derive(Args)]
struct BuildArgs {
    /// second-price, ttc, pivotal, spda, uniform, median, example1 or example5.
    name: String,
    #[arg(long, visible_alias = "agents")]
    n: Option<usize>,
    /// Comma-separated rationals, e.g. `0,1/2,1`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    amount: Option<String>,
    #[arg(long)]
    cost: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    eps: Option<String>,
    /// School priorities, one student string per school, e.g. `ABC,ABC,BCA`.
    #[arg(long)]
    priorities: Option<String>,
    /// `uniform`, `random` or `degenerate:T1,T2,...`.
    #[arg(long, default_value = "uniform")]
    prior: String,
}

enum Failure {
    Input(String),
    Analysis(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Solver(e) => Failure::Analysis(e.to_string()),
            DocumentError::Trace { partial, message } => {
                print!("{partial}");
                Failure::Analysis(message)
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GameDocument, Failure> {
    GameDocument::parse(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn rational(text: &Option<String>) -> Result<Option<empeq::Rational>, Failure> {
    text.as_deref()
        .map(|t| parse_rational(t).map_err(|e| Failure::Input(e.to_string())))
        .transpose()
}

fn schedule(cli: &Cli) -> Result<HomotopySchedule, Failure> {
    let mut s = match &cli.schedule {
        Some(text) => parse_schedule(text)?,
        None => HomotopySchedule::default(),
    };
    if let Some(tol) = cli.tol {
        s.limit_tol = tol;
    }
    s.validate().map_err(|e| Failure::Input(e.to_string()))?;
    Ok(s)
}

/// Returns whether the analysis came out negative.
fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Build(args) => {
            let params = BuildParams {
                n: args.n,
                grid: args.grid.as_deref().map(parse_grid).transpose()?,
                amount: rational(&args.amount)?,
                cost: rational(&args.cost)?,
                k: args.k,
                eps: rational(&args.eps)?,
                priorities: args
                    .priorities
                    .as_deref()
                    .map(parse_priorities)
                    .transpose()?,
                prior: parse_prior(&args.prior)?,
                seed: cli.seed,
            };
            print!("{}", cmd_build(&args.name, &params)?.to_json());
            Ok(false)
        }
        Command::CheckScf { inputs } => {
            let check = |path: &PathBuf| -> Result<CommandOutput, Failure> {
                Ok(cmd_check_scf(&load(path)?)?)
            };
            let results: Vec<Result<CommandOutput, Failure>> = match cli.jobs {
                Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Failure::Input(e.to_string()))?
                    .install(|| inputs.par_iter().map(check).collect()),
                _ => inputs.iter().map(check).collect(),
            };
            let mut negative = false;
            for (path, result) in inputs.iter().zip(results) {
                let out = result?;
                if inputs.len() > 1 {
                    println!("== {}", path.display());
                }
                print!("{}", out.text);
                negative |= out.negative;
            }
            Ok(negative)
        }
        Command::QreTrace { input } => {
            let doc = load(input)?;
            let s = schedule(cli)?;
            print!("{}", cmd_qre_trace(&doc, &s)?);
            Ok(false)
        }
        Command::ClassifyEq { input, profile } => {
            let doc = load(input)?;
            let text = read(profile)?;
            let s = schedule(cli)?;
            let out = cmd_classify_eq(&doc, &text, cli.tol.unwrap_or(1e-9), &s)?;
            print!("{}", out.text);
            Ok(out.negative)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("EMPEQ_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = run(&cli);
    let _ = std::io::stdout().flush();
    match result {
        Ok(negative) if negative && cli.strict => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
