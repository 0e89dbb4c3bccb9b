use num_traits::{One, Signed, Zero};

use super::{GameError, Labels, Lottery, ProductSpace};
use crate::numeric::Rational;

/// Message spaces plus an outcome function defined on every message profile.
#[derive(Clone, Debug, PartialEq)]
pub struct Mechanism {
    agents: Labels,
    messages: Vec<Labels>,
    outcomes: Labels,
    space: ProductSpace,
    outcome_fn: Vec<Lottery>,
}

impl Mechanism {
    /// `outcome_fn` is indexed by message profile in the order of [`ProductSpace`].
    pub fn new(
        agents: Labels,
        messages: Vec<Labels>,
        outcomes: Labels,
        outcome_fn: Vec<Lottery>,
    ) -> Result<Self, GameError> {
        if messages.len() != agents.len() {
            return Err(GameError::Dimension(format!(
                "{} agents but {} message spaces",
                agents.len(),
                messages.len()
            )));
        }
        let space = ProductSpace::new(messages.iter().map(Labels::len).collect());
        if outcome_fn.len() != space.len() {
            return Err(GameError::Dimension(format!(
                "outcome function has {} entries, message space has {}",
                outcome_fn.len(),
                space.len()
            )));
        }
        if let Some(l) = outcome_fn
            .iter()
            .find(|l| l.max_outcome() >= outcomes.len())
        {
            return Err(GameError::UnknownId(format!(
                "outcome index {}",
                l.max_outcome()
            )));
        }
        Ok(Self {
            agents,
            messages,
            outcomes,
            space,
            outcome_fn,
        })
    }

    pub fn from_fn(
        agents: Labels,
        messages: Vec<Labels>,
        outcomes: Labels,
        mut f: impl FnMut(&[usize]) -> Lottery,
    ) -> Result<Self, GameError> {
        let space = ProductSpace::new(messages.iter().map(Labels::len).collect());
        let outcome_fn = space.iter().map(|m| f(&m)).collect();
        Self::new(agents, messages, outcomes, outcome_fn)
    }

    pub fn agents(&self) -> &Labels {
        &self.agents
    }

    pub fn n_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn messages(&self, agent: usize) -> &Labels {
        &self.messages[agent]
    }

    pub fn message_spaces(&self) -> &[Labels] {
        &self.messages
    }

    pub fn outcomes(&self) -> &Labels {
        &self.outcomes
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn outcome(&self, profile: &[usize]) -> &Lottery {
        &self.outcome_fn[self.space.index(profile)]
    }

    pub fn outcome_at(&self, index: usize) -> &Lottery {
        &self.outcome_fn[index]
    }

    pub fn outcome_fn(&self) -> &[Lottery] {
        &self.outcome_fn
    }
}

/// `u_i(x | θ_i)` for every agent, type and outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct UtilityTable {
    values: Vec<Vec<Vec<Rational>>>,
}

impl UtilityTable {
    /// `values[agent][type][outcome]`.
    pub fn new(values: Vec<Vec<Vec<Rational>>>) -> Self {
        Self { values }
    }

    pub fn from_fn(
        types: &[Labels],
        n_outcomes: usize,
        mut f: impl FnMut(usize, usize, usize) -> Rational,
    ) -> Self {
        let values = types
            .iter()
            .enumerate()
            .map(|(i, ts)| {
                (0..ts.len())
                    .map(|t| (0..n_outcomes).map(|o| f(i, t, o)).collect())
                    .collect()
            })
            .collect();
        Self { values }
    }

    pub fn get(&self, agent: usize, ty: usize, outcome: usize) -> &Rational {
        &self.values[agent][ty][outcome]
    }

    pub fn row(&self, agent: usize, ty: usize) -> &[Rational] {
        &self.values[agent][ty]
    }

    pub fn of_lottery(&self, agent: usize, ty: usize, lottery: &Lottery) -> Rational {
        lottery.expectation(&self.values[agent][ty])
    }

    pub fn check_shape(&self, types: &[Labels], n_outcomes: usize) -> Result<(), GameError> {
        let ok = self.values.len() == types.len()
            && self.values.iter().zip(types).all(|(rows, ts)| {
                rows.len() == ts.len() && rows.iter().all(|r| r.len() == n_outcomes)
            });
        if ok {
            Ok(())
        } else {
            Err(GameError::Dimension(
                "utility table does not cover every (agent, type, outcome)".into(),
            ))
        }
    }

    /// Largest minus smallest utility in the table.
    pub fn range(&self) -> Rational {
        let mut it = self.values.iter().flatten().flatten();
        let first = match it.next() {
            Some(v) => v.clone(),
            None => return Rational::zero(),
        };
        let (lo, hi) = it.fold((first.clone(), first), |(lo, hi), v| {
            (
                if v < &lo { v.clone() } else { lo },
                if v > &hi { v.clone() } else { hi },
            )
        });
        hi - lo
    }
}

/// Common prior over type profiles.
#[derive(Clone, Debug, PartialEq)]
pub struct Prior {
    space: ProductSpace,
    weights: Vec<Rational>,
}

impl Prior {
    pub fn new(sizes: Vec<usize>, weights: Vec<Rational>) -> Result<Self, GameError> {
        let space = ProductSpace::new(sizes);
        if weights.len() != space.len() {
            return Err(GameError::Dimension(format!(
                "prior has {} weights for {} type profiles",
                weights.len(),
                space.len()
            )));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(GameError::InvalidPrior("negative weight".into()));
        }
        let total: Rational = weights.iter().cloned().sum();
        if !total.is_one() {
            return Err(GameError::InvalidPrior(format!("weights sum to {total}")));
        }
        Ok(Self { space, weights })
    }

    pub fn uniform(sizes: Vec<usize>) -> Self {
        let space = ProductSpace::new(sizes);
        let w = Rational::new(1.into(), (space.len() as i64).into());
        Self {
            weights: vec![w; space.len()],
            space,
        }
    }

    pub fn degenerate(sizes: Vec<usize>, profile: &[usize]) -> Result<Self, GameError> {
        let space = ProductSpace::new(sizes);
        if profile.len() != space.dims() || profile.iter().zip(space.sizes()).any(|(c, s)| c >= s) {
            return Err(GameError::Dimension(
                "type profile outside the type space".into(),
            ));
        }
        let mut weights = vec![Rational::zero(); space.len()];
        weights[space.index(profile)] = Rational::one();
        Ok(Self { space, weights })
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, profile: &[usize]) -> &Rational {
        &self.weights[self.space.index(profile)]
    }

    pub fn is_full_support(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }

    pub fn is_degenerate(&self) -> bool {
        self.weights.iter().filter(|w| w.is_positive()).count() == 1
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_positive())
            .map(|(i, _)| i)
    }

    pub fn marginal(&self, agent: usize, ty: usize) -> Rational {
        self.support()
            .filter(|&k| self.space.coord(k, agent) == ty)
            .map(|k| self.weights[k].clone())
            .sum()
    }

    /// `p(θ | θ_i)` over profiles with the given own type; `None` when the marginal is zero.
    pub fn conditional(&self, agent: usize, ty: usize) -> Option<Vec<(usize, Rational)>> {
        let marginal = self.marginal(agent, ty);
        if marginal.is_zero() {
            return None;
        }
        Some(
            self.support()
                .filter(|&k| self.space.coord(k, agent) == ty)
                .map(|k| (k, &self.weights[k] / &marginal))
                .collect(),
        )
    }
}

/// A mechanism together with types, a common prior and utilities.
#[derive(Clone, Debug, PartialEq)]
pub struct BayesianGame {
    mechanism: Mechanism,
    types: Vec<Labels>,
    prior: Prior,
    utilities: UtilityTable,
}

impl BayesianGame {
    pub fn new(
        mechanism: Mechanism,
        types: Vec<Labels>,
        prior: Prior,
        utilities: UtilityTable,
    ) -> Result<Self, GameError> {
        if types.len() != mechanism.n_agents() {
            return Err(GameError::Dimension(
                "one type space per agent required".into(),
            ));
        }
        let sizes: Vec<usize> = types.iter().map(Labels::len).collect();
        if prior.space().sizes() != sizes.as_slice() {
            return Err(GameError::Dimension(
                "prior does not range over the type space".into(),
            ));
        }
        utilities.check_shape(&types, mechanism.outcomes().len())?;
        Ok(Self {
            mechanism,
            types,
            prior,
            utilities,
        })
    }

    pub fn mechanism(&self) -> &Mechanism {
        &self.mechanism
    }

    pub fn types(&self, agent: usize) -> &Labels {
        &self.types[agent]
    }

    pub fn type_spaces(&self) -> &[Labels] {
        &self.types
    }

    pub fn prior(&self) -> &Prior {
        &self.prior
    }

    pub fn utilities(&self) -> &UtilityTable {
        &self.utilities
    }

    pub fn n_agents(&self) -> usize {
        self.mechanism.n_agents()
    }

    pub fn is_supported(&self, agent: usize, ty: usize) -> bool {
        self.prior.marginal(agent, ty).is_positive()
    }

    /// Types with positive prior marginal, in declaration order.
    pub fn supported_types(&self, agent: usize) -> Vec<usize> {
        (0..self.types[agent].len())
            .filter(|&t| self.is_supported(agent, t))
            .collect()
    }

    /// Same game with a degenerate prior at `type_profile`.
    pub fn to_complete_info(&self, type_profile: &[usize]) -> Result<BayesianGame, GameError> {
        let prior = Prior::degenerate(self.prior.space().sizes().to_vec(), type_profile)?;
        BayesianGame::new(
            self.mechanism.clone(),
            self.types.clone(),
            prior,
            self.utilities.clone(),
        )
    }

    /// Each agent's expected utility of the outcome at a pure message profile, given types.
    pub fn pure_payoffs(&self, type_profile: &[usize], message_profile: &[usize]) -> Vec<Rational> {
        let lottery = self.mechanism.outcome(message_profile);
        (0..self.n_agents())
            .map(|i| self.utilities.of_lottery(i, type_profile[i], lottery))
            .collect()
    }

    /// Largest minus smallest utility.
    pub fn payoff_range(&self) -> Rational {
        self.utilities.range()
    }
}
