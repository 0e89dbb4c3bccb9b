use crate::game::{validate_profile, BayesianGame, PayoffModel, StrategyProfile};
use crate::numeric::Scalar;

use super::SolverError;

/// Default probability-gap tolerance.
pub const TOL_P: f64 = 1e-9;
/// Default payoff-gap tolerance.
pub const TOL_U: f64 = 1e-9;

/// A pair played in the wrong order: `σ(m) > σ(n)` although `U(m) ≤ U(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityViolation {
    pub agent: usize,
    pub ty: usize,
    pub m: usize,
    pub n: usize,
    pub sigma_m: f64,
    pub sigma_n: f64,
    pub u_m: f64,
    pub u_n: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityReport {
    pub verdict: bool,
    pub violations: Vec<MonotonicityViolation>,
}

/// Flags `(m, n)` iff `σ(m) > σ(n) + tol_p` and `U(δ_m) ≤ U(δ_n) + tol_u`.
pub fn is_weakly_payoff_monotone<S: Scalar>(
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
    tol_p: S,
    tol_u: S,
) -> Result<MonotonicityReport, SolverError> {
    let v = validate_profile(game, profile);
    if !v.is_empty() {
        return Err(SolverError::InvalidProfile(
            v.iter().map(ToString::to_string).collect(),
        ));
    }
    let model = PayoffModel::new(game);
    let mut violations = Vec::new();
    for i in 0..game.n_agents() {
        for t in game.supported_types(i) {
            let u = model.payoff_vector(profile, i, t)?;
            let d = profile.get(i, t).expect("validated profile");
            for m in 0..d.len() {
                for n in 0..d.len() {
                    if m != n
                        && d[m] > d[n].clone() + tol_p.clone()
                        && u[m] <= u[n].clone() + tol_u.clone()
                    {
                        violations.push(MonotonicityViolation {
                            agent: i,
                            ty: t,
                            m,
                            n,
                            sigma_m: d[m].to_f64(),
                            sigma_n: d[n].to_f64(),
                            u_m: u[m].to_f64(),
                            u_n: u[n].to_f64(),
                        });
                    }
                }
            }
        }
    }
    Ok(MonotonicityReport {
        verdict: violations.is_empty(),
        violations,
    })
}
