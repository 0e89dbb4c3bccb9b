//! Finite Bayesian games: mechanisms, priors, utilities, strategy profiles and
//! payoff evaluation.

mod dominance;
mod lottery;
mod model;
mod payoff;
mod profile;
mod space;

use thiserror::Error;

pub use dominance::{
    dominance, iterated_weak_dominance, strictly_dominant_message, weakly_dominant_messages,
    Dominance,
};
pub use lottery::Lottery;
pub use model::{BayesianGame, Mechanism, Prior, UtilityTable};
pub use payoff::{exact_payoff_tensor, expected_utility, is_best_response, PayoffModel};
pub use profile::{validate_profile, ProfileViolation, StrategyProfile, NORMALIZATION_TOL};
pub use space::{Labels, ProductSpace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("empty id space")]
    EmptySpace,
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid lottery: {0}")]
    InvalidLottery(String),
    #[error("invalid prior: {0}")]
    InvalidPrior(String),
    #[error("type outside prior support (agent {agent}, type {ty})")]
    OutsideSupport { agent: usize, ty: usize },
    #[error("profile has no strategy for agent {agent} type {ty}")]
    MissingStrategy { agent: usize, ty: usize },
}

/// Convenience alias used by `to_complete_info` callers.
pub fn to_complete_info(
    game: &BayesianGame,
    type_profile: &[usize],
) -> Result<BayesianGame, GameError> {
    game.to_complete_info(type_profile)
}
