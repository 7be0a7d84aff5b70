mod commands;
mod point;
mod suite;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hpclifford::groebner::Limits;
use hpclifford::multipoly::MonomialOrder;
use hpclifford::Error;

#[derive(Parser, Debug)]
#[command(name = "hpclifford", version, about = "Heisenberg-invariant graded Clifford algebras over Q(w_p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Presentation, dual quadrics, base locus and Hilbert series at one point.
    Analyze {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Run a named batch of checks, printing expected vs computed.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        #[command(flatten)]
        common: Common,
    },
    /// The PSL2(p)-orbit of quantum points.
    Quantum {
        #[command(flatten)]
        common: Common,
    },
    /// The PSL2(p)-orbit of a point under the twist action.
    Orbit {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Projective fixed points of e1^a e2^b acting on the simple module V_i.
    FixedPoints {
        #[command(flatten)]
        common: Common,
        /// Exponents "a,b" of e1 and e2.
        #[arg(long, default_value = "-1,0", allow_hyphen_values = true)]
        element: String,
        /// Index i of the simple module V_i.
        #[arg(long, default_value_t = 1)]
        rep: u32,
    },
    /// Per-class character series of the algebra at a point.
    CharSeries {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArgs,
    },
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// The odd prime p.
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long, value_enum, default_value_t = Order::Grevlex)]
    pub order: Order,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest degree the Groebner engine may reach.
    #[arg(long, default_value_t = 30)]
    pub limit_degree: u32,
    /// Largest Groebner basis size.
    #[arg(long, default_value_t = 5000)]
    pub limit_basis: usize,
}

impl Common {
    pub fn limits(&self) -> Limits {
        Limits {
            max_degree: self.limit_degree,
            max_basis: self.limit_basis,
        }
    }

    pub fn monomial_order(&self) -> MonomialOrder {
        match self.order {
            Order::Grevlex => MonomialOrder::Grevlex,
            Order::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(clap::Args, Debug, Clone)]
pub struct PointArgs {
    /// Comma-separated coordinates over Q(w), e.g. "1,-1/2,w^2+w^3"; "inf" at p = 3.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[arg(long, value_enum, default_value_t = Coords::A)]
    pub coords: Coords,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Grevlex,
    Lex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coords {
    /// (a0 : a1 : ... : ah), or the affine tail with a0 = 1.
    A,
    /// (A : B : C) at p = 5, or the affine (A, B) with C = 1.
    #[value(name = "ABC", alias = "abc")]
    Abc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    P3Paper,
    P5Paper,
    P7General,
    Charseries,
    Koszul,
}

/// Failure of a command, mapped onto the exit code.
pub enum Failure {
    Lib(Error),
    ChecksFailed(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match &cli.command {
        Command::Analyze { common, point } => commands::analyze(common, point),
        Command::Suite { name, common } => suite::run(*name, common),
        Command::Quantum { common } => commands::quantum(common),
        Command::Orbit { common, point } => commands::orbit(common, point),
        Command::FixedPoints { common, element, rep } => commands::fixed_points(common, element, *rep),
        Command::CharSeries { common, point } => commands::char_series(common, point),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
        Err(Failure::ChecksFailed(n)) => {
            eprintln!("{n} check(s) failed");
            ExitCode::from(1)
        }
    }
}
