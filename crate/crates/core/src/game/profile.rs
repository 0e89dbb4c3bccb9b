use std::fmt;

use super::BayesianGame;
use crate::numeric::{sum, Scalar};

/// Behavior strategies: one distribution per agent and supported type.
///
/// `S` is `f64` for solver output and `Rational` for exact checks.
#[derive(Clone, Debug, PartialEq)]
pub struct StrategyProfile<S = f64> {
    dists: Vec<Vec<Option<Vec<S>>>>,
}

impl<S: Scalar> StrategyProfile<S> {
    /// `dists[agent][type]`, `None` for types the profile does not cover.
    pub fn new(dists: Vec<Vec<Option<Vec<S>>>>) -> Self {
        Self { dists }
    }

    /// Fills every supported agent-type with `f(agent, type)`.
    pub fn from_fn(game: &BayesianGame, mut f: impl FnMut(usize, usize) -> Vec<S>) -> Self {
        let dists = (0..game.n_agents())
            .map(|i| {
                (0..game.types(i).len())
                    .map(|t| game.is_supported(i, t).then(|| f(i, t)))
                    .collect()
            })
            .collect();
        Self { dists }
    }

    pub fn uniform(game: &BayesianGame) -> Self {
        Self::from_fn(game, |i, _| {
            let n = game.mechanism().messages(i).len();
            let w = S::one() / S::from_f64(n as f64);
            vec![w; n]
        })
    }

    /// Pure profile: `choice(agent, type)` is the message played.
    pub fn pure(game: &BayesianGame, mut choice: impl FnMut(usize, usize) -> usize) -> Self {
        Self::from_fn(game, |i, t| {
            let mut d = vec![S::zero(); game.mechanism().messages(i).len()];
            d[choice(i, t)] = S::one();
            d
        })
    }

    /// Truthful reporting in a game whose message spaces equal its type spaces.
    pub fn truthful(game: &BayesianGame) -> Self {
        Self::pure(game, |_, t| t)
    }

    pub fn n_agents(&self) -> usize {
        self.dists.len()
    }

    pub fn n_types(&self, agent: usize) -> usize {
        self.dists[agent].len()
    }

    pub fn get(&self, agent: usize, ty: usize) -> Option<&[S]> {
        self.dists
            .get(agent)
            .and_then(|a| a.get(ty))
            .and_then(|d| d.as_deref())
    }

    pub fn set(&mut self, agent: usize, ty: usize, dist: Vec<S>) {
        self.dists[agent][ty] = Some(dist);
    }

    pub fn dists(&self) -> &[Vec<Option<Vec<S>>>] {
        &self.dists
    }

    /// Iterates `(agent, type, distribution)` over covered agent-types.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[S])> + '_ {
        self.dists.iter().enumerate().flat_map(|(i, ts)| {
            ts.iter()
                .enumerate()
                .filter_map(move |(t, d)| d.as_deref().map(|d| (i, t, d)))
        })
    }

    pub fn to_f64(&self) -> StrategyProfile<f64> {
        StrategyProfile {
            dists: self
                .dists
                .iter()
                .map(|ts| {
                    ts.iter()
                        .map(|d| d.as_ref().map(|d| d.iter().map(Scalar::to_f64).collect()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Max-norm distance over agent-types covered by both profiles.
    pub fn distance(&self, other: &StrategyProfile<S>) -> f64 {
        let mut worst = 0.0f64;
        for (i, t, d) in self.entries() {
            if let Some(e) = other.get(i, t) {
                for (a, b) in d.iter().zip(e) {
                    worst = worst.max((a.to_f64() - b.to_f64()).abs());
                }
            }
        }
        worst
    }
}

/// A defect found by [`validate_profile`].
#[derive(Clone, Debug, PartialEq)]
pub enum ProfileViolation {
    MissingType {
        agent: usize,
        ty: usize,
    },
    WrongLength {
        agent: usize,
        ty: usize,
        expected: usize,
        found: usize,
    },
    Negative {
        agent: usize,
        ty: usize,
        message: usize,
    },
    NotNormalized {
        agent: usize,
        ty: usize,
        total: f64,
    },
    UnknownAgentCount {
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for ProfileViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingType { agent, ty } => {
                write!(
                    f,
                    "agent {agent} type {ty}: no distribution for a positive-prior type"
                )
            }
            Self::WrongLength {
                agent,
                ty,
                expected,
                found,
            } => write!(
                f,
                "agent {agent} type {ty}: distribution has {found} entries, expected {expected}"
            ),
            Self::Negative { agent, ty, message } => {
                write!(
                    f,
                    "agent {agent} type {ty}: negative probability on message {message}"
                )
            }
            Self::NotNormalized { agent, ty, total } => {
                write!(f, "agent {agent} type {ty}: probabilities sum to {total}")
            }
            Self::UnknownAgentCount { expected, found } => {
                write!(f, "profile covers {found} agents, game has {expected}")
            }
        }
    }
}

/// Normalization tolerance for float profiles.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Lists coverage and normalization defects; empty means the profile is valid.
pub fn validate_profile<S: Scalar>(
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
) -> Vec<ProfileViolation> {
    let mut out = Vec::new();
    if profile.n_agents() != game.n_agents() {
        out.push(ProfileViolation::UnknownAgentCount {
            expected: game.n_agents(),
            found: profile.n_agents(),
        });
        return out;
    }
    for i in 0..game.n_agents() {
        let n = game.mechanism().messages(i).len();
        for t in game.supported_types(i) {
            let Some(d) = profile.get(i, t) else {
                out.push(ProfileViolation::MissingType { agent: i, ty: t });
                continue;
            };
            if d.len() != n {
                out.push(ProfileViolation::WrongLength {
                    agent: i,
                    ty: t,
                    expected: n,
                    found: d.len(),
                });
                continue;
            }
            if let Some(m) = d.iter().position(|p| *p < S::zero()) {
                out.push(ProfileViolation::Negative {
                    agent: i,
                    ty: t,
                    message: m,
                });
            }
            let total = sum(d);
            let ok = if S::EXACT {
                total == S::one()
            } else {
                (total.to_f64() - 1.0).abs() <= NORMALIZATION_TOL
            };
            if !ok {
                out.push(ProfileViolation::NotNormalized {
                    agent: i,
                    ty: t,
                    total: total.to_f64(),
                });
            }
        }
    }
    out
}
