mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hultman::ginibre::{DEFAULT_SEED, DEFAULT_Z_THRESHOLD};
use hultman::numbers::PnSource;
use hultman::verify::{Suite, Tier};
use hultman::{TableSource, DEFAULT_ENUMERATION_CAP};

use cache::{Kind, PgSource};
use output::Format;

/// Hultman numbers: exact tables, moment polynomials, generating functions
/// and the cross-checks between them.
#[derive(Debug, Parser)]
#[command(name = "hultman", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; never changes any emitted value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cache directory. When set, tables are read from and written to it.
    #[arg(long, global = true, env = "HULTMAN_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest n enumerated over all of S_n.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of H(n, k).
    Table {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "recursion")]
        source: TableSourceArg,
    },
    /// Moment polynomials p_0(N), ..., p_{n_max}(N).
    Pn {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "recursion")]
        source: PnSourceArg,
    },
    /// Numerators P_0(x), ..., P_{g_max}(x) with their property checks.
    Pg {
        #[arg(long)]
        g_max: usize,
        #[arg(long, value_enum, default_value = "ode")]
        source: PgSource,
    },
    /// Alternating cycles and gluing genus of one permutation.
    Cycles {
        /// One-line notation, e.g. 2,3,1,4.
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, value_enum, default_value = "fast")]
        tier: TierArg,
    },
    /// Monte Carlo estimate of E Tr(X^n X*^n) for an N x N Ginibre matrix.
    Mc {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
        z_threshold: f64,
    },
    /// Store or load cached objects.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Compute an object and write it to the cache.
    Store(CacheTarget),
    /// Read a cached object, validate it and print it.
    Load(CacheTarget),
}

#[derive(Debug, Args)]
pub struct CacheTarget {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Route name valid for the kind, e.g. brute, wick or ode.
    #[arg(long)]
    pub source: String,
    /// n_max for tables and p_n, g_max for P_g.
    #[arg(long)]
    pub size: usize,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum TableSourceArg {
    Brute,
    Stirling,
    Recursion,
}

impl From<TableSourceArg> for TableSource {
    fn from(s: TableSourceArg) -> Self {
        match s {
            TableSourceArg::Brute => TableSource::Brute,
            TableSourceArg::Stirling => TableSource::Stirling,
            TableSourceArg::Recursion => TableSource::Recursion,
        }
    }
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum PnSourceArg {
    Recursion,
    Table,
    Wick,
}

impl From<PnSourceArg> for PnSource {
    fn from(s: PnSourceArg) -> Self {
        match s {
            PnSourceArg::Recursion => PnSource::Recursion,
            PnSourceArg::Table => PnSource::Table,
            PnSourceArg::Wick => PnSource::Wick,
        }
    }
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum TierArg {
    Fast,
    Slow,
}

impl From<TierArg> for Tier {
    fn from(t: TierArg) -> Self {
        match t {
            TierArg::Fast => Tier::Fast,
            TierArg::Slow => Tier::Slow,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match cli.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| commands::run(&cli)),
            Err(e) => commands::error_report(&cli, format!("cannot start {k} threads: {e}")),
        },
        None => commands::run(&cli),
    };
    if let Err(e) = report.emit(cli.format, cli.out.as_deref()) {
        eprintln!("hultman: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.status != output::Status::Pass {
        if let Some(msg) = report.payload.get("error").and_then(|v| v.as_str()) {
            eprintln!("hultman: {msg}");
        }
    }
    ExitCode::from(report.status.exit_code() as u8)
}
