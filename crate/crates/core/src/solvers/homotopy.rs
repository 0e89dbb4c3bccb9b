use log::{debug, info};

use crate::game::{BayesianGame, PayoffModel, StrategyProfile};
use crate::numeric::to_f64;

use super::fixed_point::solve_with;
use super::{FixedPointConfig, ResponseParams, SolverError};

/// Geometric schedule `λ_k = λ_0 ρ^k` with stopping tolerances.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopySchedule {
    pub lambda0: f64,
    pub growth: f64,
    /// Maximum number of λ steps.
    pub max_steps: usize,
    pub residual_tol: f64,
    pub limit_tol: f64,
    /// Iteration cap per λ step.
    pub max_iterations: usize,
}

impl Default for HomotopySchedule {
    fn default() -> Self {
        Self {
            lambda0: 0.1,
            growth: 1.5,
            max_steps: 200,
            residual_tol: 1e-10,
            limit_tol: 1e-7,
            max_iterations: 100_000,
        }
    }
}

impl HomotopySchedule {
    pub fn validate(&self) -> Result<(), SolverError> {
        let ok = self.lambda0 > 0.0
            && self.lambda0.is_finite()
            && self.growth > 1.0
            && self.growth.is_finite()
            && self.residual_tol > 0.0
            && self.limit_tol > 0.0
            && self.max_steps > 0;
        if ok {
            Ok(())
        } else {
            Err(SolverError::InvalidParams(
                "schedule needs λ0 > 0, ρ > 1, positive tolerances and at least one step".into(),
            ))
        }
    }

    pub(crate) fn fixed_point_config(&self) -> FixedPointConfig {
        FixedPointConfig {
            residual_tol: self.residual_tol,
            max_iterations: self.max_iterations,
            ..FixedPointConfig::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TracePoint {
    pub lambda: f64,
    pub profile: StrategyProfile<f64>,
    pub residual: f64,
    pub iterations: usize,
    /// The warm start failed and this point was solved from the uniform profile.
    pub branch_event: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    /// Starts with the uniform profile at `λ = 0`.
    pub points: Vec<TracePoint>,
    pub limit: StrategyProfile<f64>,
    /// Largest pure-deviation gain at the limit.
    pub nash_gap: f64,
    /// The ε of the ε-Nash acceptance check.
    pub epsilon: f64,
}

/// Follows logistic QRE from `λ = 0` along the schedule until successive
/// solutions differ by less than `limit_tol` and the current one is an ε-Nash
/// equilibrium with `ε = 2 · limit_tol · payoff range`.
pub fn trace_limiting_logistic(
    game: &BayesianGame,
    schedule: &HomotopySchedule,
) -> Result<Trace, SolverError> {
    schedule.validate()?;
    let model = PayoffModel::<f64>::new(game);
    let config = schedule.fixed_point_config();
    let range = to_f64(&game.payoff_range());
    let epsilon = (2.0 * schedule.limit_tol * range).max(1e-12);
    let uniform = StrategyProfile::<f64>::uniform(game);
    let mut points = vec![TracePoint {
        lambda: 0.0,
        profile: uniform.clone(),
        residual: 0.0,
        iterations: 0,
        branch_event: false,
    }];
    let mut lambda = schedule.lambda0;
    for step in 0..schedule.max_steps {
        let params = ResponseParams::logistic(game, lambda);
        let prev = &points.last().expect("nonempty path").profile;
        let (solution, branch_event) = match solve_with(&model, &params, prev.clone(), &config) {
            Ok(s) => (s, false),
            Err(SolverError::NonConvergence { .. }) => {
                debug!("warm start failed at λ={lambda}; restarting from uniform");
                match solve_with(&model, &params, uniform.clone(), &config) {
                    Ok(s) => (s, true),
                    Err(e) => {
                        return Err(SolverError::TraceFailed {
                            lambda,
                            partial: points,
                            source: Box::new(e),
                        })
                    }
                }
            }
            Err(e) => return Err(e),
        };
        let diff = solution.profile.distance(prev);
        points.push(TracePoint {
            lambda,
            profile: solution.profile,
            residual: solution.residual,
            iterations: solution.iterations,
            branch_event,
        });
        let current = &points.last().expect("just pushed").profile;
        if diff < schedule.limit_tol {
            let gap = super::nash::nash_gap(game, current)?;
            if gap <= epsilon {
                info!("trace converged after {} steps at λ={lambda}", step + 1);
                return Ok(Trace {
                    limit: current.clone(),
                    nash_gap: gap,
                    epsilon,
                    points,
                });
            }
        }
        lambda *= schedule.growth;
    }
    Err(SolverError::TraceFailed {
        lambda,
        partial: points,
        source: Box::new(SolverError::StepLimit),
    })
}
