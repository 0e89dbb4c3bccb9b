//! JSON game documents and the commands behind the `empeq` binary.

mod commands;
mod format;
mod profile;

use thiserror::Error;

pub use commands::{
    cmd_build, cmd_check_scf, cmd_classify_eq, cmd_qre_trace, induced_outcomes, parse_grid,
    parse_prior, parse_priorities, parse_schedule, revelation_scf, BuildParams, CommandOutput,
    PriorSpec, MECHANISM_NAMES,
};
pub use format::{GameDocument, MechanismDocument};
pub use profile::{exact_profile_to_json, parse_profile, profile_to_json, ParsedProfile};

use crate::game::GameError;
use crate::mechanisms::BuildError;
use crate::solvers::SolverError;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    /// A trace that stopped early; `partial` holds the CSV rows computed so far.
    #[error("{message}")]
    Trace { partial: String, message: String },
}
