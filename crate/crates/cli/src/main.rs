mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "nsct",
    version,
    about = "Normal supercharacter theories of finite groups"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Largest group order accepted when building a group.
    #[arg(long, global = true, env = "NSCT_MAX_ORDER", default_value_t = nsct_core::group::DEFAULT_MAX_ELEMENTS)]
    pub max_order: usize,
    /// Largest group order for which a character table is computed.
    #[arg(long, global = true, default_value_t = nsct_core::chartab::DEFAULT_MAX_ORDER)]
    pub max_table_order: usize,
    /// Largest number of nodes in a subgroup lattice.
    #[arg(long, global = true, default_value_t = nsct_core::lattice::DEFAULT_MAX_LATTICE)]
    pub max_lattice: usize,
    /// Seed for the sampled associativity check on large Cayley tables.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closure,
    Idempotents,
    Grouping,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct TableSource {
    /// Character table file for the group.
    #[arg(long, conflicts_with_all = ["dixon", "no_table"])]
    pub chartab: Option<PathBuf>,
    /// Compute the character table (the default when no file is given).
    #[arg(long)]
    pub dixon: bool,
    /// Skip the character table; only the Möbius values are computed.
    #[arg(long, conflicts_with = "dixon")]
    pub no_table: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, exponent, class count and normal subgroup count.
    Info { group: PathBuf },
    /// The theory generated by a set of normal subgroups.
    Nsct {
        group: PathBuf,
        /// `gen:i,j,…`, `pattern:(i,j),…` or `all`; repeatable.
        #[arg(long, num_args = 0..)]
        subgroups: Vec<String>,
        #[command(flatten)]
        table: TableSource,
    },
    /// The finest normal supercharacter theory.
    Finest {
        group: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[command(flatten)]
        table: TableSource,
    },
    /// The lattice closure of a set of normal subgroups.
    Lattice {
        group: PathBuf,
        #[arg(long, num_args = 0..)]
        subgroups: Vec<String>,
        /// Emit the Hasse diagram as DOT (same as `--format dot`).
        #[arg(long)]
        dot: bool,
    },
    /// Compute or check a character table.
    Chartab {
        group: PathBuf,
        /// Compute the table (the default when `--check` is absent).
        #[arg(long, conflicts_with = "check")]
        dixon: bool,
        /// Validate a character table file.
        #[arg(long)]
        check: Option<PathBuf>,
        /// Also verify the central idempotent identities (small groups only).
        #[arg(long)]
        check_idempotents: bool,
    },
}

/// Outcome classes mapped onto exit codes 0, 1 and 2.
pub enum Failure {
    Verification(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.opts;
    let result = match cli.command {
        Command::Info { group } => commands::info(&opts, &group),
        Command::Nsct {
            group,
            subgroups,
            table,
        } => commands::nsct(&opts, &group, &subgroups, &table),
        Command::Finest {
            group,
            method,
            table,
        } => commands::finest(&opts, &group, method, &table),
        Command::Lattice {
            group,
            subgroups,
            dot,
        } => commands::lattice(&opts, &group, &subgroups, dot),
        Command::Chartab {
            group,
            dixon: _,
            check,
            check_idempotents,
        } => commands::chartab(&opts, &group, check.as_deref(), check_idempotents),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
