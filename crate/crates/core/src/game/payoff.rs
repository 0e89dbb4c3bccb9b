use super::{BayesianGame, GameError, Mechanism, ProductSpace, StrategyProfile, UtilityTable};
use crate::numeric::{Rational, Scalar};

struct AgentTypeModel<S> {
    /// `(opponent type coordinates, p(θ_{-i} | θ_i))`, opponents in agent order.
    beliefs: Vec<(Vec<usize>, S)>,
    /// Utility of the outcome at each full message profile.
    payoffs: Vec<S>,
}

/// Precomputed conditional beliefs and payoff tensors for repeated evaluation.
pub struct PayoffModel<S> {
    space: ProductSpace,
    sizes: Vec<usize>,
    /// `[agent][opponent message profile]` -> full index with own message 0.
    opp_base: Vec<Vec<usize>>,
    models: Vec<Vec<Option<AgentTypeModel<S>>>>,
}

impl<S: Scalar> PayoffModel<S> {
    pub fn new(game: &BayesianGame) -> Self {
        let mech = game.mechanism();
        let space = mech.space().clone();
        let sizes = space.sizes().to_vec();
        let n = game.n_agents();
        let opp_base = (0..n)
            .map(|i| {
                let opp_sizes: Vec<usize> = (0..n).filter(|&j| j != i).map(|j| sizes[j]).collect();
                let opp = ProductSpace::new(opp_sizes);
                (0..opp.len())
                    .map(|k| {
                        let c = opp.coords(k);
                        let mut full = Vec::with_capacity(n);
                        full.extend_from_slice(&c[..i]);
                        full.push(0);
                        full.extend_from_slice(&c[i..]);
                        space.index(&full)
                    })
                    .collect()
            })
            .collect();
        let prior = game.prior();
        let models = (0..n)
            .map(|i| {
                (0..game.types(i).len())
                    .map(|t| {
                        let cond = prior.conditional(i, t)?;
                        let beliefs = cond
                            .into_iter()
                            .map(|(k, w)| {
                                let mut c = prior.space().coords(k);
                                c.remove(i);
                                (c, S::from_rational(&w))
                            })
                            .collect();
                        let payoffs = payoff_tensor(mech, game.utilities(), i, t);
                        Some(AgentTypeModel { beliefs, payoffs })
                    })
                    .collect()
            })
            .collect();
        Self {
            space,
            sizes,
            opp_base,
            models,
        }
    }

    /// Distribution over opponent message profiles faced by `(agent, ty)`.
    fn opponent_distribution(
        &self,
        profile: &StrategyProfile<S>,
        agent: usize,
        model: &AgentTypeModel<S>,
    ) -> Result<Vec<S>, GameError> {
        let n = self.sizes.len();
        let opp_len = self.opp_base[agent].len();
        let mut total = vec![S::zero(); opp_len];
        let mut buf: Vec<S> = Vec::with_capacity(opp_len);
        let mut next: Vec<S> = Vec::with_capacity(opp_len);
        for (types, w) in &model.beliefs {
            buf.clear();
            buf.push(w.clone());
            for (k, j) in (0..n).filter(|&j| j != agent).enumerate() {
                let ty = types[k];
                let d = profile
                    .get(j, ty)
                    .ok_or(GameError::MissingStrategy { agent: j, ty })?;
                next.clear();
                for x in &buf {
                    for p in d {
                        next.push(x.clone() * p.clone());
                    }
                }
                std::mem::swap(&mut buf, &mut next);
            }
            for (acc, x) in total.iter_mut().zip(buf.drain(..)) {
                *acc = acc.clone() + x;
            }
        }
        Ok(total)
    }

    /// `U(δ_m)` for every own message `m` of `(agent, ty)`.
    pub fn payoff_vector(
        &self,
        profile: &StrategyProfile<S>,
        agent: usize,
        ty: usize,
    ) -> Result<Vec<S>, GameError> {
        let model = self
            .models
            .get(agent)
            .and_then(|a| a.get(ty))
            .and_then(Option::as_ref)
            .ok_or(GameError::OutsideSupport { agent, ty })?;
        let dist = self.opponent_distribution(profile, agent, model)?;
        let stride = self.space.stride(agent);
        let mut out = vec![S::zero(); self.sizes[agent]];
        for (k, w) in dist.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let base = self.opp_base[agent][k];
            for (m, slot) in out.iter_mut().enumerate() {
                *slot = slot.clone() + w.clone() * model.payoffs[base + m * stride].clone();
            }
        }
        Ok(out)
    }

    /// Payoff vectors for every covered agent-type, shaped like a profile.
    pub fn all_payoffs(
        &self,
        profile: &StrategyProfile<S>,
    ) -> Result<StrategyProfile<S>, GameError> {
        let mut dists = Vec::with_capacity(self.models.len());
        for (i, types) in self.models.iter().enumerate() {
            let mut row = Vec::with_capacity(types.len());
            for (t, m) in types.iter().enumerate() {
                row.push(match m {
                    Some(_) => Some(self.payoff_vector(profile, i, t)?),
                    None => None,
                });
            }
            dists.push(row);
        }
        Ok(StrategyProfile::new(dists))
    }

    pub fn is_supported(&self, agent: usize, ty: usize) -> bool {
        matches!(
            self.models.get(agent).and_then(|a| a.get(ty)),
            Some(Some(_))
        )
    }
}

fn payoff_tensor<S: Scalar>(
    mech: &Mechanism,
    utilities: &UtilityTable,
    agent: usize,
    ty: usize,
) -> Vec<S> {
    mech.outcome_fn()
        .iter()
        .map(|l| S::from_rational(&utilities.of_lottery(agent, ty, l)))
        .collect()
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `U_φ(σ_{-i}, μ_i | p, θ_i)`.
pub fn expected_utility<S: Scalar>(
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
    agent: usize,
    ty: usize,
    action_dist: &[S],
) -> Result<S, GameError> {
    if action_dist.len() != game.mechanism().messages(agent).len() {
        return Err(GameError::Dimension("action distribution length".into()));
    }
    let model = PayoffModel::new(game);
    let u = model.payoff_vector(profile, agent, ty)?;
    Ok(dot(&u, action_dist))
}

/// Whether `δ_message` is within `tol` of the best pure reply for `(agent, ty)`.
pub fn is_best_response<S: Scalar>(
    game: &BayesianGame,
    profile: &StrategyProfile<S>,
    agent: usize,
    ty: usize,
    message: usize,
    tol: S,
) -> Result<bool, GameError> {
    let u = PayoffModel::new(game).payoff_vector(profile, agent, ty)?;
    let own = u
        .get(message)
        .cloned()
        .ok_or_else(|| GameError::UnknownId(format!("message index {message}")))?;
    Ok(u.iter().all(|x| own.clone() + tol.clone() >= *x))
}

/// Each agent's utility, at type `ty`, of the outcome at every message profile.
pub fn exact_payoff_tensor(
    mech: &Mechanism,
    utilities: &UtilityTable,
    agent: usize,
    ty: usize,
) -> Vec<Rational> {
    payoff_tensor(mech, utilities, agent, ty)
}
