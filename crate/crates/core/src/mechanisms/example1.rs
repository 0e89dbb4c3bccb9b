use super::BuildError;
use crate::game::{BayesianGame, GameError, Labels, Lottery, Mechanism, Prior, UtilityTable};
use crate::numeric::int;
use crate::scf::Scf;

/// Two-outcome dictatorship where agent 2's first type is indifferent, plus the
/// mechanism that replaces that type's report with `k` equivalent messages.
#[derive(Clone, Debug)]
pub struct Example1 {
    pub scf: Scf,
    pub enlarged: Mechanism,
    pub k: usize,
}

impl Example1 {
    /// Game of the enlarged mechanism under `prior` over the scf's type space.
    pub fn enlarged_game(&self, prior: Prior) -> Result<BayesianGame, GameError> {
        BayesianGame::new(
            self.enlarged.clone(),
            self.scf.type_spaces().to_vec(),
            prior,
            self.scf.utilities().clone(),
        )
    }

    /// Index of outcome `a`.
    pub fn outcome_a(&self) -> usize {
        0
    }
}

/// Agent 1 has one type; agent 2 has types `t2` (indifferent between `a` and
/// `b`) and `t2'` (prefers `b`). The scf picks agent 2's top choice, `a` when
/// indifferent. The enlarged mechanism gives agent 2 messages `t2'` (outcome `b`)
/// and `m1..mk` (outcome `a`).
pub fn build_example1(k: usize) -> Result<Example1, BuildError> {
    if k == 0 {
        return Err(BuildError::Param("k must be at least 1".into()));
    }
    let agents = Labels::new(["1", "2"])?;
    let types = vec![Labels::new(["t1"])?, Labels::new(["t2", "t2'"])?];
    let outcomes = Labels::new(["a", "b"])?;
    let utilities = UtilityTable::new(vec![
        vec![vec![int(1), int(0)]],
        vec![vec![int(1), int(1)], vec![int(0), int(1)]],
    ]);
    let scf = Scf::from_fn(agents.clone(), types, outcomes.clone(), utilities, |t| {
        Lottery::degenerate(if t[1] == 0 { 0 } else { 1 })
    })?;
    let mut m2 = vec!["t2'".to_string()];
    m2.extend((1..=k).map(|l| format!("m{l}")));
    let enlarged = Mechanism::from_fn(
        agents,
        vec![Labels::new(["t1"])?, Labels::new(m2)?],
        outcomes,
        |m| Lottery::degenerate(if m[1] == 0 { 1 } else { 0 }),
    )?;
    Ok(Example1 { scf, enlarged, k })
}
