use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use fanoball::picard::DEFAULT_BUDGET;
use fanoball_cli::{data, query, run_suite, Format, Suite};

/// Exact checks for the Fano surface of the Fermat cubic, its abelian covers,
/// the Eisenstein congruence lattice and hypergeometric periods.
#[derive(Parser)]
#[command(name = "fanoball", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Worker threads for parallel sections (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Run the parts of `all` concurrently (the report is unchanged).
        #[arg(long)]
        parallel: bool,
    },
    /// Abelian cover classification.
    Namba {
        #[command(subcommand)]
        command: NambaCommand,
    },
    /// The congruence lattice over the Eisenstein integers.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Ball 5-tuples and their periods.
    Dm {
        #[command(subcommand)]
        command: DmCommand,
    },
}

#[derive(Subcommand)]
enum NambaCommand {
    /// Cover group of an arrangement file (or a bundled name such as `dp5-ten-curves`).
    Classify { file: PathBuf },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// All elements with entries of norm at most H.
    Search {
        #[arg(long)]
        height: i64,
    },
    /// Image of the height-1 reflections modulo λ^k.
    Quotient {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Membership of a matrix given as nine `a+bw` tokens, row-major.
    Member { matrix: String },
}

#[derive(Subcommand)]
enum DmCommand {
    /// Tuples with common denominator at most D passing INT.
    Enumerate {
        #[arg(long)]
        max_den: i64,
        /// Use the weaker ΣINT condition.
        #[arg(long)]
        sigma: bool,
    },
    /// The ten periods at a configuration.
    Periods {
        /// Five rationals, e.g. `1/3,1/3,1/3,1/3,2/3`.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Five complex numbers, e.g. `0+0I,1+0I,0.5+1I,-1-1I,2+0.3I`.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Also compute the rank over this many perturbed samples.
        #[arg(long)]
        rank_samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_arrangement(path: &PathBuf) -> Result<(String, String)> {
    let name = path.display().to_string();
    if !path.exists() {
        if let Some(text) = data::bundled(&name) {
            return Ok((text.to_string(), name));
        }
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {name}"))?;
    Ok((text, name))
}

/// Output text and whether every check passed.
fn execute(cli: &Cli) -> Result<(String, bool)> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::Verify { suite, parallel } => {
            let report = run_suite(*suite, *parallel);
            (report.render(f), report.all_pass())
        }
        Command::Namba { command: NambaCommand::Classify { file } } => {
            let (text, name) = read_arrangement(file)?;
            (query::render("namba classify", &query::classify(&text, &name)?, f), true)
        }
        Command::Lattice { command } => match command {
            LatticeCommand::Search { height } => (query::render("lattice search", &query::search(*height)?, f), true),
            LatticeCommand::Quotient { level, budget } => {
                (query::render("lattice quotient", &query::quotient(*level, *budget)?, f), true)
            }
            LatticeCommand::Member { matrix } => (query::render("lattice member", &query::member(matrix)?, f), true),
        },
        Command::Dm { command } => match command {
            DmCommand::Enumerate { max_den, sigma } => {
                (query::render("dm enumerate", &query::enumerate(*max_den, *sigma)?, f), true)
            }
            DmCommand::Periods { mu, points, rank_samples, seed } => {
                (query::render("dm periods", &query::periods(mu, points, *rank_samples, *seed)?, f), true)
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // help and version exit 0, usage errors 2
        Err(e) => e.exit(),
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
