//! Append-only log of enumeration results.
//!
//! One record per line, tab-separated `key=value` fields in a fixed order:
//! `profile`, `status`, `count`, `nodes`, `version`, `digests`. Digests are
//! SHA-256 hashes of the canonical tables in file format, comma-joined.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::quandle::QuandleTable;
use crate::search::{SearchOutcome, SearchStatus};

/// Environment variable naming the store file.
pub const STORE_ENV: &str = "QUANDLE_LAB_STORE";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed record on line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("no store path: pass one explicitly or set {STORE_ENV}")]
    NoPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultRecord {
    pub profile: String,
    pub status: SearchStatus,
    pub count: usize,
    pub nodes: u64,
    pub version: String,
    pub digests: Vec<String>,
}

/// Hex SHA-256 of a table's file-format text.
pub fn table_digest(q: &QuandleTable) -> String {
    let hash = Sha256::digest(q.to_text().as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

impl ResultRecord {
    pub fn from_outcome(out: &SearchOutcome) -> ResultRecord {
        ResultRecord {
            profile: out.profile.key(),
            status: out.status,
            count: out.quandles.len(),
            nodes: out.nodes_explored,
            version: VERSION.to_string(),
            digests: out.quandles.iter().map(table_digest).collect(),
        }
    }

    /// Whether `tables` hash to exactly the recorded digests, in order.
    pub fn matches(&self, tables: &[QuandleTable]) -> bool {
        self.digests.len() == tables.len()
            && self.digests.iter().zip(tables).all(|(d, q)| *d == table_digest(q))
    }

    pub fn to_line(&self) -> String {
        let status = match self.status {
            SearchStatus::Complete => "complete",
            SearchStatus::BudgetExhausted => "budget-exhausted",
        };
        format!(
            "profile={}\tstatus={}\tcount={}\tnodes={}\tversion={}\tdigests={}",
            self.profile,
            status,
            self.count,
            self.nodes,
            self.version,
            self.digests.join(",")
        )
    }

    pub fn parse_line(line: &str, lineno: usize) -> Result<ResultRecord, StoreError> {
        let bad = |message: String| StoreError::Malformed { line: lineno, message };
        let fields: Vec<&str> = line.split('\t').collect();
        let names = ["profile", "status", "count", "nodes", "version", "digests"];
        if fields.len() != names.len() {
            return Err(bad(format!("expected {} fields, got {}", names.len(), fields.len())));
        }
        let mut values = Vec::with_capacity(names.len());
        for (field, name) in fields.iter().zip(names) {
            let v = field
                .strip_prefix(name)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| bad(format!("expected field {name}")))?;
            values.push(v);
        }
        let status = match values[1] {
            "complete" => SearchStatus::Complete,
            "budget-exhausted" => SearchStatus::BudgetExhausted,
            other => return Err(bad(format!("unknown status {other:?}"))),
        };
        let number = |s: &str| s.parse::<u64>().map_err(|e| bad(format!("{s:?}: {e}")));
        Ok(ResultRecord {
            profile: values[0].to_string(),
            status,
            count: number(values[2])? as usize,
            nodes: number(values[3])?,
            version: values[4].to_string(),
            digests: if values[5].is_empty() {
                Vec::new()
            } else {
                values[5].split(',').map(str::to_string).collect()
            },
        })
    }
}

/// A store file; records are only ever appended.
#[derive(Debug, Clone)]
pub struct ResultStore {
    path: PathBuf,
}

impl ResultStore {
    pub fn open(path: impl Into<PathBuf>) -> ResultStore {
        ResultStore { path: path.into() }
    }

    /// Uses `path` if given, else [`STORE_ENV`].
    pub fn locate(path: Option<&Path>) -> Result<ResultStore, StoreError> {
        match path {
            Some(p) => Ok(ResultStore::open(p)),
            None => std::env::var_os(STORE_ENV)
                .map(ResultStore::open)
                .ok_or(StoreError::NoPath),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: io::Error) -> StoreError {
        StoreError::Io {
            path: self.path.clone(),
            source,
        }
    }

    pub fn store_result(&self, rec: &ResultRecord) -> Result<(), StoreError> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io(e))?;
        writeln!(file, "{}", rec.to_line()).map_err(|e| self.io(e))?;
        file.sync_data().map_err(|e| self.io(e))
    }

    /// Every record, oldest first. A missing file is an empty store.
    pub fn records(&self) -> Result<Vec<ResultRecord>, StoreError> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(self.io(e)),
        };
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(k, l)| ResultRecord::parse_line(l, k + 1))
            .collect()
    }

    /// Records for a profile key: complete ones newest first, then the
    /// rest newest first. The head is the authoritative answer.
    pub fn query_results(&self, key: &str) -> Result<Vec<ResultRecord>, StoreError> {
        let mut recs: Vec<ResultRecord> = self
            .records()?
            .into_iter()
            .filter(|r| r.profile == key)
            .collect();
        recs.reverse();
        recs.sort_by_key(|r| r.status != SearchStatus::Complete);
        Ok(recs)
    }
}
