//! Command-line front end: simulate rings, extract and verify generators,
//! emit traces, tables, CSV matrices and spacetime diagrams.

mod commands;
mod init;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit codes: 1 validation, 2 verification failure, 3 resource bound.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Verification(String),
    Bound(String),
}

impl CliError {
    pub fn validation(msg: String) -> Self {
        CliError::Validation(msg)
    }
}

impl From<permuton::Error> for CliError {
    fn from(e: permuton::Error) -> Self {
        match e {
            permuton::Error::EnumerationBound { .. } => CliError::Bound(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderKind {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    /// Interleave reversed updates.
    #[value(alias = "a")]
    Reversal,
    /// Apply instantaneous compensating translations.
    #[value(alias = "b")]
    Translation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Exhaustive,
    Modular,
}

#[derive(Parser)]
#[command(
    name = "permuton",
    version,
    about = "Deterministic permutation-dynamics engine for cellular-automaton spin chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// N-state cogwheel: step matrix, Hamiltonian, spectrum, residual report
    Cogwheel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evolve the two-valued exchange chain
    Chain {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        steps: usize,
        /// uniform:<v> | defect:<site> | random:<seed> | file:<path>
        #[arg(long, default_value = "defect:1")]
        init: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        render: Option<RenderKind>,
    },
    /// Slowed-down evolution: reversed updates or instantaneous translations
    Slowdown {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k0: usize,
        #[arg(long)]
        l0: usize,
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, default_value_t = 2)]
        cycles: usize,
        #[arg(long, default_value = "defect:1")]
        init: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        render: Option<RenderKind>,
    },
    /// Extract the chain Hamiltonian orbit by orbit and verify it
    Hamiltonian {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Deform one exchange and record how superpositions appear
    Perturb {
        #[arg(long)]
        s: usize,
        /// comma-separated deformation strengths
        #[arg(long, default_value = "0.001,0.01,0.1")]
        epsilons: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evolve the mass-coupled integer automaton
    Dirac {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        mu: i64,
        #[arg(long)]
        steps: usize,
        /// uniform:<v> | defect:<site>[:<value>] | random:<seed> | file:<path>
        #[arg(long, default_value = "defect:1")]
        init: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        render: Option<RenderKind>,
    },
    /// Check that one automaton step permutes configuration space
    DiracVerify {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        mu: i64,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// also print the wrapped add/subtract tables for this M
        #[arg(long)]
        table: bool,
    },
    /// Render an existing trace file
    Render {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, value_enum)]
        format: RenderKind,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Cogwheel { n, t, out } => commands::cogwheel(n, t, &out),
        Command::Chain {
            s,
            steps,
            init,
            out,
            render,
        } => commands::chain(s, steps, &init, &out, render),
        Command::Slowdown {
            s,
            k0,
            l0,
            case,
            cycles,
            init,
            out,
            render,
        } => commands::slowdown(s, k0, l0, case, cycles, &init, &out, render),
        Command::Hamiltonian { s, t, out } => commands::hamiltonian(s, t, &out),
        Command::Perturb { s, epsilons, out } => commands::perturb(s, &epsilons, &out),
        Command::Dirac {
            s,
            m,
            mu,
            steps,
            init,
            out,
            render,
        } => commands::dirac(s, m, mu, steps, &init, &out, render),
        Command::DiracVerify {
            s,
            m,
            mu,
            mode,
            table,
        } => commands::dirac_verify(s, m, mu, mode, table),
        Command::Render { trace, format, out } => commands::render_trace(&trace, format, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Bound(msg)) => {
            eprintln!("resource bound exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
