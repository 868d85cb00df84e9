mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chevalley::liealg::DEFAULT_WORK_BOUND;
use commands::Global;

#[derive(Parser)]
#[command(name = "chevalley", version, about = "Exact Dunkl operators, Chevalley restriction and Takiff invariants")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized cases.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest monomial space a single invariant computation may use.
    #[arg(long, global = true, default_value_t = DEFAULT_WORK_BOUND)]
    work_bound: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rational Dunkl operators for a root system.
    #[command(subcommand)]
    Dunkl(DunklCmd),
    /// Restriction of adjoint invariants to the Cartan subalgebra.
    #[command(subcommand)]
    Chevalley(ChevalleyCmd),
    /// Invariants of truncated current algebras g ⊗ C[T]/T^{m+1}.
    #[command(subcommand)]
    Takiff(TakiffCmd),
}

#[derive(Args)]
struct SystemArgs {
    /// Root system, e.g. A2, B3, G2.
    #[arg(long = "type", value_name = "TYPE")]
    ty: String,
    /// Multiplicities per orbit, e.g. all=1/2 or long=1,short=1/3.
    #[arg(long, default_value = "all=1")]
    k: String,
}

#[derive(Subcommand)]
enum DunklCmd {
    /// Check that coordinate Dunkl operators commute on all monomials.
    Commute {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Extra random polynomials and directions.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Gram matrix of the pairing in one degree.
    Gram {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Restrict to W-invariants and certify positivity.
        #[arg(long)]
        invariants_only: bool,
    },
    /// Apply T_xi to a polynomial in x1..xn.
    Apply {
        #[command(flatten)]
        system: SystemArgs,
        /// Comma-separated direction, e.g. 1,0 or 1/2,-1.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        poly: String,
    },
}

#[derive(Subcommand)]
enum ChevalleyCmd {
    /// Compare invariant, restricted and W-invariant dimensions per degree.
    Check {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
}

#[derive(Args)]
struct TakiffArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// A single degree; overrides --max-degree.
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    max_degree: Option<u32>,
}

#[derive(Subcommand)]
enum TakiffCmd {
    /// Invariant basis per degree and its restriction to h_m.
    Invariants(TakiffArgs),
    /// Restriction image against the criterion space per degree.
    Image(TakiffArgs),
    /// Check one polynomial on h_m against the criterion.
    Criterion {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Polynomial in u, v, w (sl2) or in the Cartan basis names.
        #[arg(long)]
        poly: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = Global {
        seed: cli.seed,
        work_bound: cli.work_bound,
    };
    let report = match &cli.command {
        Command::Dunkl(DunklCmd::Commute {
            system,
            max_degree,
            random,
        }) => commands::dunkl_commute(&g, &system.ty, &system.k, *max_degree, *random),
        Command::Dunkl(DunklCmd::Gram {
            system,
            degree,
            invariants_only,
        }) => commands::dunkl_gram(&g, &system.ty, &system.k, *degree, *invariants_only),
        Command::Dunkl(DunklCmd::Apply { system, xi, poly }) => {
            commands::dunkl_apply(&g, &system.ty, &system.k, xi, poly)
        }
        Command::Chevalley(ChevalleyCmd::Check { algebra, max_degree }) => {
            commands::chevalley_check(&g, algebra, *max_degree)
        }
        Command::Takiff(TakiffCmd::Invariants(a)) => {
            commands::takiff_invariants(&g, &a.algebra, a.m, a.degree, a.max_degree)
        }
        Command::Takiff(TakiffCmd::Image(a)) => commands::takiff_image(&g, &a.algebra, a.m, a.degree, a.max_degree),
        Command::Takiff(TakiffCmd::Criterion { algebra, m, poly }) => commands::takiff_criterion(&g, algebra, *m, poly),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code())
}
