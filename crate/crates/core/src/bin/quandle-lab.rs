use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use quandle_lab::analysis::{AnalysisReport, Profile};
use quandle_lab::constraints::derive_cycle_table;
use quandle_lab::fixtures;
use quandle_lab::quandle::{QuandleError, QuandleTable};
use quandle_lab::search::{self, SearchOptions};
use quandle_lab::store::{ResultRecord, ResultStore, STORE_ENV};

#[derive(Parser)]
#[command(name = "quandle-lab", version, about = "Finite connected quandle toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quandle axioms for a table file.
    Validate { file: PathBuf },
    /// Print the structure report for a table file or fixture.
    Analyze {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        fixture: Option<String>,
    },
    /// Print the derived cycle quandle table for a profile.
    Constraints {
        #[arg(long)]
        profile: Profile,
        #[arg(long)]
        latin: bool,
    },
    /// Enumerate connected quandles with a profile.
    Enumerate {
        #[arg(long)]
        profile: Profile,
        #[command(flatten)]
        search: SearchArgs,
        /// Append the result to this store (default: $QUANDLE_LAB_STORE).
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Search every non-divisible profile up to an order.
    Audit {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List fixtures, or print one.
    Fixtures {
        name: Option<String>,
        /// Check every fixture against its expected analysis.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    no_prefilter: bool,
    /// Do not restrict assignments to the derived block grid.
    #[arg(long)]
    no_grid: bool,
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_secs: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    max_order: Option<usize>,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        let d = SearchOptions::default();
        SearchOptions {
            max_order: self.max_order.unwrap_or(d.max_order),
            node_limit: self.budget_nodes.unwrap_or(d.node_limit),
            time_limit: self.budget_secs.map_or(d.time_limit, Duration::from_secs),
            workers: self.workers.unwrap_or(d.workers),
            prefilter: !self.no_prefilter,
            use_grid: !self.no_grid,
        }
    }
}

/// Writes to stdout; a closed pipe ends output quietly.
fn emit(text: &str) -> Result<(), String> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.to_string()),
        _ => Ok(()),
    }
}

fn read_table(path: &PathBuf) -> Result<QuandleTable, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    QuandleTable::parse(&text).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Validate { file } => {
            let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            match QuandleTable::parse(&text) {
                Ok(q) => {
                    emit(&format!("valid, order {}\n", q.order()))?;
                    Ok(true)
                }
                Err(QuandleError::Axioms(report)) => {
                    emit(&format!("invalid: {report}\n"))?;
                    Ok(false)
                }
                Err(e) => {
                    emit(&format!("malformed: {e}\n"))?;
                    Ok(false)
                }
            }
        }
        Command::Analyze { file, fixture } => {
            let q = match (file, fixture) {
                (Some(f), _) => read_table(&f)?,
                (None, Some(name)) => fixtures::load_fixture(&name).map_err(|e| e.to_string())?.table,
                (None, None) => return Err("analyze needs a file or --fixture".into()),
            };
            let report = AnalysisReport::of(&q).map_err(|e| e.to_string())?;
            emit(&report.to_string())?;
            Ok(true)
        }
        Command::Constraints { profile, latin } => {
            emit(&derive_cycle_table(&profile, latin).to_string())?;
            Ok(true)
        }
        Command::Enumerate { profile, search, store } => {
            let prob = search::build_problem(&profile, &search.options());
            let out = search::enumerate(&prob).map_err(|e| e.to_string())?;
            emit(&out.to_string())?;
            if store.is_some() || std::env::var_os(STORE_ENV).is_some() {
                let st = ResultStore::locate(store.as_deref()).map_err(|e| e.to_string())?;
                st.store_result(&ResultRecord::from_outcome(&out))
                    .map_err(|e| e.to_string())?;
            }
            Ok(true)
        }
        Command::Audit { max_n, search } => {
            let report = search::audit_hayashi(max_n, &search.options()).map_err(|e| e.to_string())?;
            emit(&report.to_string())?;
            Ok(report.counterexamples.is_empty() && report.unresolved() == 0)
        }
        Command::Fixtures { name, check } => {
            if let Some(name) = name {
                let fx = fixtures::load_fixture(&name).map_err(|e| e.to_string())?;
                emit(&fx.to_string())?;
                return Ok(true);
            }
            let mut ok = true;
            let mut text = String::new();
            for fx in fixtures::all_fixtures() {
                let line = match (check, fx.check()) {
                    (false, _) => format!("{:<16} {}", fx.name, fx.source),
                    (true, Ok(())) => format!("{}: ok", fx.name),
                    (true, Err(e)) => {
                        ok = false;
                        format!("{}: {e}", fx.name)
                    }
                };
                text.push_str(&line);
                text.push('\n');
            }
            emit(&text)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
