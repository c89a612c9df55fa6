//! Session scripts for the `homlev` command-line tool: declarations of
//! rings, modules and complexes followed by commands, each producing a JSON
//! result.

pub mod corpus;
pub mod parse;
pub mod render;
pub mod run;

use homlev::level::LevelOptions;
use homlev::linalg::Field;

pub use parse::{parse, Binding, Command, ComplexDef, ModuleDef, Session, Stmt};
pub use run::{run_command, run_session, Outcome, Status};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("line {line}: {msg}")]
    Verification { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Core { line: usize, source: homlev::Error },
}

impl CliError {
    pub fn line(&self) -> usize {
        match self {
            CliError::Parse { line, .. }
            | CliError::Verification { line, .. }
            | CliError::Core { line, .. } => *line,
        }
    }
}

/// Settings shared by every command of a session.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Field used by ring declarations that do not name one.
    pub field: Option<Field>,
    pub cutoff: usize,
    pub budget: u64,
    pub seed: u64,
    /// Substring selecting bundled corpus cases by name.
    pub corpus_filter: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        let d = LevelOptions::default();
        Config {
            field: None,
            cutoff: d.cutoff,
            budget: d.search_budget,
            seed: d.seed,
            corpus_filter: None,
        }
    }
}

impl Config {
    pub fn level_options(&self) -> LevelOptions {
        LevelOptions {
            cutoff: self.cutoff,
            search_budget: self.budget,
            seed: self.seed,
            ..LevelOptions::default()
        }
    }
}
