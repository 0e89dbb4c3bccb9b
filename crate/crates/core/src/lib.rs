//! Empirical equilibrium analysis for finite mechanisms.
//!
//! The crate has four layers:
//!
//! - [`game`]: finite Bayesian games with exact rational payoffs, priors and lotteries.
//! - [`scf`]: social choice functions and exact checkers for strategy-proofness,
//!   non-bossiness in welfare-outcome, essentially unique dominant strategies and
//!   the outcome rectangular property.
//! - [`mechanisms`]: builders for the standard desk-scale environments.
//! - [`solvers`]: quantal response fixed points, logit homotopy tracing, weak payoff
//!   monotonicity, Nash checks and empirical-equilibrium certificates.
//!
//! [`document`] holds the JSON game format and the command implementations behind
//! the `empeq` binary.

pub mod document;
pub mod game;
pub mod mechanisms;
pub mod numeric;
pub mod scf;
pub mod solvers;

pub use numeric::{parse_rational, rat, Rational};
