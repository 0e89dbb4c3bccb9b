//! Social choice functions and their incentive and rectangularity properties.

mod properties;

pub use properties::{
    check_essentially_unique_dominant, check_non_bossy, check_outcome_rectangular,
    check_strategy_proof, classify, DeviationWitness, PairWitness, PropertyReport, Verdict,
};

use crate::game::{
    BayesianGame, GameError, Labels, Lottery, Mechanism, Prior, ProductSpace, UtilityTable,
};
use crate::numeric::Rational;

/// A map from type profiles to outcome lotteries, with the environment's utilities.
#[derive(Clone, Debug, PartialEq)]
pub struct Scf {
    agents: Labels,
    types: Vec<Labels>,
    outcomes: Labels,
    space: ProductSpace,
    outcome_map: Vec<Lottery>,
    utilities: UtilityTable,
}

impl Scf {
    pub fn new(
        agents: Labels,
        types: Vec<Labels>,
        outcomes: Labels,
        outcome_map: Vec<Lottery>,
        utilities: UtilityTable,
    ) -> Result<Self, GameError> {
        if types.len() != agents.len() {
            return Err(GameError::Dimension(
                "one type space per agent required".into(),
            ));
        }
        let space = ProductSpace::new(types.iter().map(Labels::len).collect());
        if outcome_map.len() != space.len() {
            return Err(GameError::Dimension(format!(
                "outcome map has {} entries, type space has {}",
                outcome_map.len(),
                space.len()
            )));
        }
        if outcome_map
            .iter()
            .any(|l| l.max_outcome() >= outcomes.len())
        {
            return Err(GameError::Dimension("outcome index out of range".into()));
        }
        utilities.check_shape(&types, outcomes.len())?;
        Ok(Self {
            agents,
            types,
            outcomes,
            space,
            outcome_map,
            utilities,
        })
    }

    pub fn from_fn(
        agents: Labels,
        types: Vec<Labels>,
        outcomes: Labels,
        utilities: UtilityTable,
        mut g: impl FnMut(&[usize]) -> Lottery,
    ) -> Result<Self, GameError> {
        let space = ProductSpace::new(types.iter().map(Labels::len).collect());
        let map = space.iter().map(|t| g(&t)).collect();
        Self::new(agents, types, outcomes, map, utilities)
    }

    pub fn agents(&self) -> &Labels {
        &self.agents
    }

    pub fn n_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn types(&self, agent: usize) -> &Labels {
        &self.types[agent]
    }

    pub fn type_spaces(&self) -> &[Labels] {
        &self.types
    }

    pub fn outcomes(&self) -> &Labels {
        &self.outcomes
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn utilities(&self) -> &UtilityTable {
        &self.utilities
    }

    pub fn outcome(&self, profile: &[usize]) -> &Lottery {
        &self.outcome_map[self.space.index(profile)]
    }

    pub fn outcome_at(&self, index: usize) -> &Lottery {
        &self.outcome_map[index]
    }

    pub fn outcome_map(&self) -> &[Lottery] {
        &self.outcome_map
    }

    /// `u_i(g(profile) | θ_i = ty)`.
    pub fn welfare(&self, agent: usize, ty: usize, profile: &[usize]) -> Rational {
        self.utilities.of_lottery(agent, ty, self.outcome(profile))
    }

    /// Type profile labels joined by commas.
    pub fn profile_label(&self, profile: &[usize]) -> String {
        profile
            .iter()
            .enumerate()
            .map(|(i, &t)| self.types[i].name(t))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Lottery rendered with outcome labels.
    pub fn lottery_label(&self, lottery: &Lottery) -> String {
        lottery_label(&self.outcomes, lottery)
    }

    /// The scf restricted to the sub-box `keep[agent]` (type indices, in order).
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Result<Scf, GameError> {
        if keep.len() != self.n_agents() {
            return Err(GameError::Dimension(
                "one index set per agent required".into(),
            ));
        }
        let types = keep
            .iter()
            .zip(&self.types)
            .map(|(k, ts)| ts.subset(k))
            .collect::<Result<Vec<_>, _>>()?;
        let utilities = UtilityTable::from_fn(&types, self.outcomes.len(), |i, t, o| {
            self.utilities.get(i, keep[i][t], o).clone()
        });
        Scf::from_fn(
            self.agents.clone(),
            types,
            self.outcomes.clone(),
            utilities,
            |t| {
                let orig: Vec<usize> = t.iter().enumerate().map(|(i, &x)| keep[i][x]).collect();
                self.outcome(&orig).clone()
            },
        )
    }

    /// The revelation mechanism: messages are types and the outcome function is the scf.
    pub fn to_mechanism(&self) -> Mechanism {
        Mechanism::new(
            self.agents.clone(),
            self.types.clone(),
            self.outcomes.clone(),
            self.outcome_map.clone(),
        )
        .expect("scf dimensions already validated")
    }

    /// Direct revelation game under `prior`.
    pub fn direct_revelation_game(&self, prior: Prior) -> Result<BayesianGame, GameError> {
        BayesianGame::new(
            self.to_mechanism(),
            self.types.clone(),
            prior,
            self.utilities.clone(),
        )
    }
}

/// `"a"` for degenerate lotteries, `"1/2 a + 1/2 b"` otherwise.
pub fn lottery_label(outcomes: &Labels, lottery: &Lottery) -> String {
    if lottery.is_degenerate() {
        return outcomes.name(lottery.entries()[0].0).to_string();
    }
    lottery
        .entries()
        .iter()
        .map(|(o, w)| {
            format!(
                "{} {}",
                crate::numeric::format_rational(w),
                outcomes.name(*o)
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
