use crate::game::{Prior, StrategyProfile};
use crate::numeric::Scalar;
use crate::scf::Scf;

use super::nash::is_bayesian_nash;
use super::SolverError;

/// A report profile played at a true type profile whose outcome differs from the truthful one.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDeviation {
    pub truth: Vec<usize>,
    pub report: Vec<usize>,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeReport {
    /// No report profile above the support tolerance changes the outcome.
    pub truthful_equivalent: bool,
    pub deviations: Vec<OutcomeDeviation>,
    /// Max over supported `θ` and outcomes of `|φ(σ(·|θ))(x) - g(θ)(x)|`.
    pub max_outcome_deviation: f64,
}

/// Compares the outcomes induced by `profile` in the revelation game with the truthful ones.
///
/// `nash_tol` gates the equilibrium precondition; report profiles with joint
/// probability at most `support_tol` are ignored when listing deviations.
pub fn classify_revelation_equilibrium<S: Scalar>(
    scf: &Scf,
    prior: &Prior,
    profile: &StrategyProfile<S>,
    nash_tol: S,
    support_tol: S,
) -> Result<OutcomeReport, SolverError> {
    let game = scf.direct_revelation_game(prior.clone())?;
    if !is_bayesian_nash(&game, profile, nash_tol)? {
        return Err(SolverError::NotEquilibrium);
    }
    let space = scf.space();
    let n_out = scf.outcomes().len();
    let mut deviations = Vec::new();
    let mut worst = 0.0f64;
    for k in prior.support() {
        let truth = space.coords(k);
        let target = scf.outcome_at(k);
        let dists: Vec<&[S]> = truth
            .iter()
            .enumerate()
            .map(|(i, &t)| profile.get(i, t).expect("validated profile"))
            .collect();
        let mut induced = vec![0.0f64; n_out];
        for r in 0..space.len() {
            let report = space.coords(r);
            let mut p = S::one();
            for (i, &m) in report.iter().enumerate() {
                p = p * dists[i][m].clone();
            }
            if p == S::zero() {
                continue;
            }
            let lottery = scf.outcome_at(r);
            let pf = p.to_f64();
            for (o, w) in lottery.entries() {
                induced[*o] += pf * crate::numeric::to_f64(w);
            }
            if p > support_tol && lottery != target {
                deviations.push(OutcomeDeviation {
                    truth: truth.clone(),
                    report,
                    probability: pf,
                });
            }
        }
        for (o, x) in induced.iter().enumerate() {
            worst = worst.max((x - crate::numeric::to_f64(&target.prob(o))).abs());
        }
    }
    Ok(OutcomeReport {
        truthful_equivalent: deviations.is_empty(),
        deviations,
        max_outcome_deviation: worst,
    })
}
