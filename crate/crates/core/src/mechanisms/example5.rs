use num_traits::{One, Zero};

use super::BuildError;
use crate::game::{
    BayesianGame, GameError, Labels, Lottery, Mechanism, Prior, ProductSpace, UtilityTable,
};
use crate::numeric::{int, Rational};
use crate::scf::{check_strategy_proof, Scf};

/// A social choice correspondence given by admissible outcome sets per type
/// profile; a lottery is admissible when its support lies in the set.
#[derive(Clone, Debug, PartialEq)]
pub struct Correspondence {
    space: ProductSpace,
    admissible: Vec<Vec<usize>>,
}

impl Correspondence {
    pub fn new(sizes: Vec<usize>, admissible: Vec<Vec<usize>>) -> Self {
        Self {
            space: ProductSpace::new(sizes),
            admissible,
        }
    }

    pub fn admissible(&self, profile: &[usize]) -> &[usize] {
        &self.admissible[self.space.index(profile)]
    }

    pub fn contains(&self, profile: &[usize], lottery: &Lottery) -> bool {
        let allowed = self.admissible(profile);
        lottery.support().all(|o| allowed.contains(&o))
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    /// Every selection whose lotteries put multiples of `1/denominator` on each
    /// admissible outcome.
    pub fn grid_selections(&self, denominator: u32) -> Vec<Vec<Lottery>> {
        let cells: Vec<Vec<Lottery>> = self
            .admissible
            .iter()
            .map(|set| simplex_grid(set, denominator))
            .collect();
        let mut out: Vec<Vec<Lottery>> = vec![Vec::new()];
        for cell in &cells {
            let mut next = Vec::with_capacity(out.len() * cell.len());
            for prefix in &out {
                for l in cell {
                    let mut p = prefix.clone();
                    p.push(l.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

/// Lotteries on `set` with weights in multiples of `1/denominator`.
fn simplex_grid(set: &[usize], denominator: u32) -> Vec<Lottery> {
    fn rec(k: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            rec(k - 1, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut counts = Vec::new();
    rec(set.len(), denominator, &mut Vec::new(), &mut counts);
    let d = Rational::from_integer(denominator.into());
    counts
        .into_iter()
        .map(|c| {
            Lottery::new(
                set.iter()
                    .zip(c)
                    .map(|(&o, x)| (o, Rational::from_integer(x.into()) / &d)),
            )
            .expect("grid lottery")
        })
        .collect()
}

/// Three-type by two-type environment with a correspondence that has no
/// strategy-proof selection for small `ε`, and a 4x2 mechanism whose
/// undominated play always lands in the correspondence.
#[derive(Clone, Debug)]
pub struct Example5 {
    pub eps: Rational,
    pub agents: Labels,
    pub types: Vec<Labels>,
    pub outcomes: Labels,
    pub utilities: UtilityTable,
    pub correspondence: Correspondence,
    pub mechanism: Mechanism,
}

impl Example5 {
    pub fn game(&self, prior: Prior) -> Result<BayesianGame, GameError> {
        BayesianGame::new(
            self.mechanism.clone(),
            self.types.clone(),
            prior,
            self.utilities.clone(),
        )
    }

    /// The scf selecting `lotteries[k]` at the k-th type profile.
    pub fn selection(&self, lotteries: Vec<Lottery>) -> Result<Scf, GameError> {
        Scf::new(
            self.agents.clone(),
            self.types.clone(),
            self.outcomes.clone(),
            lotteries,
            self.utilities.clone(),
        )
    }

    /// First strategy-proof selection on the `1/denominator` mixture grid, if any.
    pub fn find_strategy_proof_selection(&self, denominator: u32) -> Option<Scf> {
        self.correspondence
            .grid_selections(denominator)
            .into_iter()
            .map(|s| self.selection(s).expect("selection dimensions"))
            .find(|scf| check_strategy_proof(scf).holds())
    }
}

pub fn build_example5(eps: Rational) -> Result<Example5, BuildError> {
    if !(eps > Rational::zero() && eps < Rational::one()) {
        return Err(BuildError::Param("eps must lie in (0, 1)".into()));
    }
    let agents = Labels::new(["1", "2"])?;
    let types = vec![
        Labels::new(["t1", "t1'", "t1''"])?,
        Labels::new(["t2", "t2'"])?,
    ];
    let outcomes = Labels::new(["a", "b", "c", "d", "a'", "b'", "c'", "d'"])?;
    let one = int(1);
    let half_minus = Rational::new(1.into(), 2.into()) - &eps;
    let u1 = vec![
        vec![
            int(1),
            int(-1),
            half_minus.clone(),
            int(-1),
            int(-1),
            int(1),
            int(-1),
            half_minus,
        ],
        vec![
            int(0),
            int(0),
            int(1),
            int(0),
            int(0),
            int(0),
            int(1),
            int(0),
        ],
        vec![
            int(0),
            int(0),
            int(0),
            int(1),
            int(0),
            int(0),
            int(0),
            int(1),
        ],
    ];
    let u2 = vec![
        vec![
            eps.clone(),
            int(1),
            int(0),
            int(0),
            int(0),
            &one - &eps,
            int(-1),
            int(-1),
        ],
        vec![
            &one - &eps,
            int(0),
            int(-1),
            int(-1),
            int(1),
            eps.clone(),
            int(0),
            int(0),
        ],
    ];
    let utilities = UtilityTable::new(vec![u1, u2]);
    // Rows: agent 1's type; columns: agent 2's type.
    let correspondence = Correspondence::new(
        vec![3, 2],
        vec![vec![0, 1], vec![4, 5], vec![2], vec![6], vec![3], vec![7]],
    );
    let messages = vec![
        Labels::new(["m1", "m2", "m3", "m4"])?,
        Labels::new(["n1", "n2"])?,
    ];
    let mechanism = Mechanism::from_fn(agents.clone(), messages, outcomes.clone(), |m| {
        Lottery::degenerate(m[0] + 4 * m[1])
    })?;
    Ok(Example5 {
        eps,
        agents,
        types,
        outcomes,
        utilities,
        correspondence,
        mechanism,
    })
}
