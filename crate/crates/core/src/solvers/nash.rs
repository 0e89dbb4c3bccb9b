use crate::game::{
    validate_profile, weakly_dominant_messages, BayesianGame, PayoffModel, StrategyProfile,
};
use crate::numeric::{Rational, Scalar};

use super::SolverError;

fn check_valid<S: Scalar>(
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
) -> Result<(), SolverError> {
    let v = validate_profile(game, profile);
    if v.is_empty() {
        Ok(())
    } else {
        Err(SolverError::InvalidProfile(
            v.iter().map(ToString::to_string).collect(),
        ))
    }
}

fn gap_with<S: Scalar>(
    model: &PayoffModel<S>,
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
) -> Result<S, SolverError> {
    let mut worst = S::zero();
    for i in 0..game.n_agents() {
        for t in game.supported_types(i) {
            let u = model.payoff_vector(profile, i, t)?;
            let d = profile.get(i, t).expect("validated profile");
            let current = u
                .iter()
                .zip(d)
                .fold(S::zero(), |acc, (x, p)| acc + x.clone() * p.clone());
            for x in &u {
                let g = x.clone() - current.clone();
                if g > worst {
                    worst = g;
                }
            }
        }
    }
    Ok(worst)
}

/// Largest gain any agent-type can get by switching to a pure message.
pub fn nash_gap<S: Scalar>(
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
) -> Result<S, SolverError> {
    check_valid(game, profile)?;
    gap_with(&PayoffModel::new(game), game, profile)
}

/// True iff no agent-type can improve on its current mixture by more than `tol`.
pub fn is_bayesian_nash<S: Scalar>(
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
    tol: S,
) -> Result<bool, SolverError> {
    Ok(nash_gap(game, profile)? <= tol)
}

/// Pure behavior-strategy profile: `choices[agent][type]`, `None` for unsupported types.
pub type PureProfile = Vec<Vec<Option<usize>>>;

/// Every pure Bayesian Nash equilibrium, checked exactly.
///
/// Fails with [`SolverError::TooLarge`] when the number of pure profiles exceeds `cap`.
pub fn enumerate_pure_nash(
    game: &BayesianGame,
    cap: usize,
) -> Result<Vec<PureProfile>, SolverError> {
    let slots: Vec<(usize, usize, usize)> = (0..game.n_agents())
        .flat_map(|i| {
            game.supported_types(i)
                .into_iter()
                .map(move |t| (i, t, game.mechanism().messages(i).len()))
        })
        .collect();
    let mut count: usize = 1;
    for &(_, _, n) in &slots {
        count = count
            .checked_mul(n)
            .filter(|&c| c <= cap)
            .ok_or(SolverError::TooLarge { cap })?;
    }
    let model = PayoffModel::<Rational>::new(game);
    let mut out = Vec::new();
    let mut choice = vec![0usize; slots.len()];
    for _ in 0..count {
        let mut pure: PureProfile = (0..game.n_agents())
            .map(|i| vec![None; game.types(i).len()])
            .collect();
        for (k, &(i, t, _)) in slots.iter().enumerate() {
            pure[i][t] = Some(choice[k]);
        }
        let profile = pure_to_profile(game, &pure);
        if gap_with(&model, game, &profile)? <= Rational::from_integer(0.into()) {
            out.push(pure);
        }
        for k in (0..slots.len()).rev() {
            choice[k] += 1;
            if choice[k] < slots[k].2 {
                break;
            }
            choice[k] = 0;
        }
    }
    Ok(out)
}

/// Exact profile playing the given pure choices.
pub fn pure_to_profile(game: &BayesianGame, pure: &PureProfile) -> StrategyProfile<Rational> {
    StrategyProfile::pure(game, |i, t| {
        pure[i][t].expect("supported type has a choice")
    })
}

/// Outcome of the weakly-dominant support test.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportVerdict {
    pub passed: bool,
    /// `(agent, type, message)`: weakly dominant messages played with probability
    /// at most the support tolerance.
    pub missing: Vec<(usize, usize, usize)>,
}

/// Every weakly dominant message of the mechanism must be in the support of the
/// agent-type's strategy; failure rules the profile out as an empirical equilibrium.
pub fn lemma1_support_test<S: Scalar>(
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
    nash_tol: S,
    support_tol: S,
) -> Result<SupportVerdict, SolverError> {
    if !is_bayesian_nash(game, profile, nash_tol)? {
        return Err(SolverError::NotEquilibrium);
    }
    let mut missing = Vec::new();
    for i in 0..game.n_agents() {
        for t in game.supported_types(i) {
            let d = profile.get(i, t).expect("validated profile");
            for m in weakly_dominant_messages(game.mechanism(), game.utilities(), i, t) {
                if d[m] <= support_tol {
                    missing.push((i, t, m));
                }
            }
        }
    }
    Ok(SupportVerdict {
        passed: missing.is_empty(),
        missing,
    })
}
