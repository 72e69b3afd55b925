use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Conjugacy-class counts, the alternating-group ratio bound and a genetic
/// search over permutation groups.
#[derive(Debug, Parser)]
#[command(name = "conjforge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ratios k(A_n) / log2|A_n| for n = 3..11.
    Table1 {
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the lower bound for every 3 <= n <= max-n.
    Verify {
        #[arg(long, default_value_t = 200)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Dump p(n), alpha(n), beta(n) and the analytic bounds.
    Partitions {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Ratio and score of a group.
    Score {
        #[command(flatten)]
        group: GroupChoice,
        #[arg(long)]
        json: bool,
    },
    /// Run the genetic search.
    Search {
        #[arg(long)]
        config: std::path::PathBuf,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// JSON-lines log destination; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Full report (final population and config) as JSON.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
    },
    /// Degree, order, class count and Abelian flag of a group.
    GroupInfo {
        #[arg(long)]
        generators: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GroupChoice {
    /// `deg=n g1; g2; ...` in cycle notation.
    #[arg(long)]
    generators: Option<String>,
    #[arg(long)]
    alternating: Option<usize>,
    #[arg(long)]
    symmetric: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table1 { csv, json } => commands::table1(csv, json),
        Command::Verify { max_n, json } => commands::verify(max_n, json),
        Command::Partitions { max_n, csv } => commands::partitions(max_n, csv),
        Command::Score { group, json } => commands::score(
            group.generators.as_deref(),
            group.alternating,
            group.symmetric,
            json,
        ),
        Command::Search {
            config,
            workers,
            out,
            report,
        } => commands::search(&config, workers, out.as_deref(), report.as_deref()),
        Command::GroupInfo { generators, json } => commands::group_info(&generators, json),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
