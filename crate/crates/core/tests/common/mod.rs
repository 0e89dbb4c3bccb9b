#![allow(dead_code)]

use empeq::game::{BayesianGame, Labels, Lottery, Mechanism, Prior, ProductSpace, UtilityTable};
use empeq::numeric::{int, rat};
use empeq::scf::Scf;
use empeq::Rational;
use rand::Rng;

pub fn names(prefix: &str, n: usize) -> Labels {
    Labels::new((0..n).map(|k| format!("{prefix}{k}"))).unwrap()
}

/// Integer weights in `1..=9` (or `0..=9` when zeros are allowed), normalized.
pub fn random_prior<R: Rng>(rng: &mut R, sizes: Vec<usize>, full_support: bool) -> Prior {
    let len: usize = sizes.iter().product();
    loop {
        let raw: Vec<i64> = (0..len)
            .map(|_| {
                if full_support {
                    rng.gen_range(1..=9)
                } else {
                    rng.gen_range(0..=9)
                }
            })
            .collect();
        let total: i64 = raw.iter().sum();
        if total > 0 {
            return Prior::new(sizes, raw.into_iter().map(|w| rat(w, total)).collect()).unwrap();
        }
    }
}

/// Random game whose outcomes are the message profiles themselves, so every
/// agent-type payoff cell is independent.
pub struct RawGame {
    pub agents: Labels,
    pub messages: Vec<Labels>,
    pub types: Vec<Labels>,
    pub outcomes: Labels,
    /// `utilities[agent][type][profile index]`.
    pub utilities: Vec<Vec<Vec<Rational>>>,
}

impl RawGame {
    pub fn random<R: Rng>(
        rng: &mut R,
        max_agents: usize,
        max_messages: usize,
        max_types: usize,
    ) -> Self {
        let n = rng.gen_range(2..=max_agents);
        let messages: Vec<Labels> = (0..n)
            .map(|_| names("m", rng.gen_range(2..=max_messages)))
            .collect();
        let types: Vec<Labels> = (0..n)
            .map(|_| names("t", rng.gen_range(1..=max_types)))
            .collect();
        let space = ProductSpace::new(messages.iter().map(Labels::len).collect());
        let outcomes = names("x", space.len());
        let utilities = types
            .iter()
            .map(|ts| {
                (0..ts.len())
                    .map(|_| {
                        (0..space.len())
                            .map(|_| int(rng.gen_range(-4..=4)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            agents: names("A", n),
            messages,
            types,
            outcomes,
            utilities,
        }
    }

    /// Makes message `d[i][t]` weakly dominant for every agent-type; strict with
    /// a random positive bonus on some cells.
    pub fn plant_dominant<R: Rng>(&mut self, rng: &mut R) -> Vec<Vec<usize>> {
        let space = ProductSpace::new(self.messages.iter().map(Labels::len).collect());
        let mut chosen = Vec::new();
        for i in 0..self.agents.len() {
            let mut row = Vec::new();
            for t in 0..self.types[i].len() {
                let d = rng.gen_range(0..self.messages[i].len());
                for k in 0..space.len() {
                    if space.coord(k, i) != 0 {
                        continue;
                    }
                    let cells: Vec<usize> = (0..self.messages[i].len())
                        .map(|m| space.with_coord(k, i, m))
                        .collect();
                    let best = cells
                        .iter()
                        .map(|&c| self.utilities[i][t][c].clone())
                        .max()
                        .unwrap();
                    let bonus = int(rng.gen_range(0..=1));
                    self.utilities[i][t][cells[d]] = best + bonus;
                }
                row.push(d);
            }
            chosen.push(row);
        }
        chosen
    }

    pub fn mechanism(&self) -> Mechanism {
        Mechanism::new(
            self.agents.clone(),
            self.messages.clone(),
            self.outcomes.clone(),
            (0..self.outcomes.len()).map(Lottery::degenerate).collect(),
        )
        .unwrap()
    }

    pub fn game(&self, prior: Prior) -> BayesianGame {
        BayesianGame::new(
            self.mechanism(),
            self.types.clone(),
            prior,
            UtilityTable::new(self.utilities.clone()),
        )
        .unwrap()
    }

    pub fn type_sizes(&self) -> Vec<usize> {
        self.types.iter().map(Labels::len).collect()
    }
}

/// Random deterministic scf on a small box with integer utilities.
pub fn random_scf<R: Rng>(rng: &mut R, agents: usize, types: usize, outcomes: usize) -> Scf {
    let type_spaces: Vec<Labels> = (0..agents).map(|_| names("t", types)).collect();
    let outcome_labels = names("x", outcomes);
    let utilities =
        UtilityTable::from_fn(&type_spaces, outcomes, |_, _, _| int(rng.gen_range(0..=2)));
    let space = ProductSpace::new(vec![types; agents]);
    let map: Vec<Lottery> = (0..space.len())
        .map(|_| Lottery::degenerate(rng.gen_range(0..outcomes)))
        .collect();
    Scf::new(
        names("A", agents),
        type_spaces,
        outcome_labels,
        map,
        utilities,
    )
    .unwrap()
}
