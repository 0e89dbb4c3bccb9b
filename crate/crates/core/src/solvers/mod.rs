//! Quantal response equilibria, monotonicity tests, Nash checks and
//! empirical-equilibrium certificates.

mod certify;
mod classify;
mod fixed_point;
mod homotopy;
mod monotone;
mod nash;
mod response;

use thiserror::Error;

pub use certify::{
    certify_empirical, certify_empirical_with, CertificateStep, CertificateVerdict, CertifyOptions,
    EmpiricalCertificate,
};
pub use classify::{classify_revelation_equilibrium, OutcomeDeviation, OutcomeReport};
pub use fixed_point::{qre_fixed_point, FixedPointConfig, QreSolution};
pub use homotopy::{trace_limiting_logistic, HomotopySchedule, Trace, TracePoint};
pub use monotone::{
    is_weakly_payoff_monotone, MonotonicityReport, MonotonicityViolation, TOL_P, TOL_U,
};
pub use nash::{
    enumerate_pure_nash, is_bayesian_nash, lemma1_support_test, nash_gap, pure_to_profile,
    PureProfile, SupportVerdict,
};
pub use response::{
    anchored_response, kappa_response, logistic_response, ResponseKind, ResponseParams,
};

use crate::game::{GameError, StrategyProfile};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid profile: {}", .0.join("; "))]
    InvalidProfile(Vec<String>),
    #[error("fixed-point iteration did not converge (best residual {residual:e})")]
    NonConvergence {
        residual: f64,
        best: Box<StrategyProfile<f64>>,
    },
    #[error("trace failed at λ={lambda}: {source}")]
    TraceFailed {
        lambda: f64,
        partial: Vec<TracePoint>,
        source: Box<SolverError>,
    },
    #[error("step limit reached before the path converged")]
    StepLimit,
    #[error("profile is not a Bayesian Nash equilibrium")]
    NotEquilibrium,
    #[error("more than {cap} pure profiles")]
    TooLarge { cap: usize },
}
