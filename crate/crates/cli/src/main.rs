//! `glqv`: batch front-end for the glqv-core verifiers.
//!
//! Exit status: 0 when everything requested passed, 2 on a verification
//! failure, 3 on bad input, 4 when a resource cap was hit.

mod commands;
mod emit;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use glqv_core::exact::parse_ratio;
use glqv_core::fqpoly::prime_power;
use glqv_core::{BigRat, Caps, Error};

use emit::{write_output, Format};
use suites::{Scope, Suite};

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Resource(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::NoPrimitivePrime { .. } => Failure::Input(e.to_string()),
            Error::Resource { .. } | Error::FactorizationBudget { .. } => Failure::Resource(e.to_string()),
            Error::Internal(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 2,
            Failure::Input(_) => 3,
            Failure::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Resource(m) | Failure::Internal(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "glqv", version, about = "Exact verification of character-vanishing ingredients for GL(n,q)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for the parallel loops (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Group {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_parser = parse_q)]
    q: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Partition numbers p(0), …, p(max).
    Pfun {
        #[arg(long)]
        max: u64,
    },
    /// Cyclotomic values Φ_n(a) for n = 1..max, optionally split as P_n(a)·R_n(a).
    Cyclo {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        a: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        #[arg(long)]
        split: bool,
    },
    /// Conjugacy classes of GL(n,q) with centralizer orders and sizes.
    Classes(Group),
    /// Irreducible characters of GL(n,q) with their degrees.
    Chars(Group),
    /// The pair statistic Q(ε), exact or sampled.
    Pairstats {
        #[command(flatten)]
        group: Group,
        #[arg(long, value_parser = parse_eps)]
        eps: BigRat,
        /// Estimate from this many seeded samples instead of enumerating.
        #[arg(long, requires = "seed", value_parser = clap::value_parser!(u64).range(1..))]
        sample: Option<u64>,
        #[arg(long, requires = "sample")]
        seed: Option<u64>,
    },
    /// The set X of classes and the exceptional pair set R.
    Rset {
        #[command(flatten)]
        group: Group,
        #[arg(long, value_parser = parse_positive)]
        k: BigRat,
        #[arg(long, value_parser = parse_eps)]
        eps: BigRat,
    },
    /// GL(2,q) character table: P against Q(ε) + ε² on a grid of ε.
    Gl2 {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long, value_delimiter = ',', value_parser = parse_eps, default_value = "1/20,1/10,1/5,1/4,1/2,1")]
        eps_grid: Vec<BigRat>,
        /// Write the full table (descriptors and cyclotomic values) as JSON.
        #[arg(long)]
        dump_table: Option<PathBuf>,
    },
    /// Run verifier suites and summarize pass/fail.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        #[arg(long, value_delimiter = ',', value_parser = parse_q, default_value = "2,3")]
        q: Vec<u64>,
        /// Write the matrix-group snapshots of the oracle suite as JSON.
        #[arg(long)]
        dump_snapshot: Option<PathBuf>,
    },
    /// P ≤ Q(ε) + ε² tables over a grid of (n, q, ε).
    Report {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        #[arg(long, value_delimiter = ',', value_parser = parse_q, default_value = "2,3")]
        q: Vec<u64>,
        #[arg(long, value_delimiter = ',', value_parser = parse_eps, default_value = "1/10,1/4,1/2")]
        eps_grid: Vec<BigRat>,
    },
}

fn parse_q(s: &str) -> Result<u64, String> {
    let q: u64 = s.trim().parse().map_err(|_| format!("invalid prime power: {s}"))?;
    prime_power(q).map(|_| q).ok_or_else(|| format!("invalid prime power: {q}"))
}

fn parse_fraction(s: &str) -> Result<BigRat, String> {
    parse_ratio(s).ok_or_else(|| format!("malformed fraction: {s} (expected a/b)"))
}

fn parse_eps(s: &str) -> Result<BigRat, String> {
    let eps = parse_fraction(s)?;
    let zero = BigRat::from_integer(0.into());
    let one = BigRat::from_integer(1.into());
    if eps <= zero || eps > one {
        return Err(format!("ε = {s} is outside (0, 1]"));
    }
    Ok(eps)
}

fn parse_positive(s: &str) -> Result<BigRat, String> {
    let x = parse_fraction(s)?;
    if x <= BigRat::from_integer(0.into()) {
        return Err(format!("{s} must be positive"));
    }
    Ok(x)
}

fn run(cli: &Cli, caps: &Caps) -> Result<emit::Artifact, Failure> {
    match &cli.command {
        Command::Pfun { max } => Ok(commands::pfun(*max)),
        Command::Cyclo { a, max, split } => commands::cyclo(*a, *max, *split),
        Command::Classes(g) => commands::classes(g.n, g.q, caps),
        Command::Chars(g) => commands::chars(g.n, g.q, caps),
        Command::Pairstats { group, eps, sample, seed } => {
            let sampling = sample.zip(*seed);
            commands::pairstats(group.n, group.q, eps, sampling, caps)
        }
        Command::Rset { group, k, eps } => commands::rset(group.n, group.q, k, eps, caps),
        Command::Gl2 { q, eps_grid, dump_table } => commands::gl2(*q, eps_grid, dump_table.as_deref()),
        Command::Verify { suite, max_n, q, dump_snapshot } => {
            let scope = Scope { max_n: *max_n, qs: q, caps, snapshot_dump: dump_snapshot.as_deref() };
            suites::verify(*suite, &scope)
        }
        Command::Report { max_n, q, eps_grid } => commands::report(*max_n, q, eps_grid, caps),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.into()).build_global() {
            eprintln!("glqv: cannot configure thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    let caps = Caps::from_env();
    let artifact = match run(&cli, &caps) {
        Ok(a) => a,
        Err(f) => {
            eprintln!("glqv: {}", f.message());
            return ExitCode::from(f.exit_code());
        }
    };
    let bytes = match artifact.render(cli.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("glqv: cannot render output: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write_output(&bytes, cli.output.as_deref()) {
        eprintln!("glqv: cannot write output: {e}");
        return ExitCode::from(3);
    }
    if artifact.pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("glqv: verification failed");
        ExitCode::from(2)
    }
}
