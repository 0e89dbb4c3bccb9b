//! Builders for standard allocation, auction and voting environments.
//!
//! Every builder returns an [`Scf`] whose outcome labels are discovered by
//! enumeration, so utilities are defined exactly on the reachable outcomes.

mod auction;
mod example1;
mod example5;
mod exchange;
mod pivotal;
mod rationing;
mod school;
mod voting;

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

pub use auction::{build_first_price, build_second_price, AuctionSpec};
pub use example1::{build_example1, Example1};
pub use example5::{build_example5, Correspondence, Example5};
pub use exchange::{build_ttc, top_trading_cycles, ExchangeSpec};
pub use pivotal::{build_pivotal, PivotalSpec};
pub use rationing::{build_uniform_rule, uniform_allocation, UniformSpec};
pub use school::{build_spda, deferred_acceptance, SchoolChoiceSpec};
pub use voting::{build_median_voting, MedianSpec};

use crate::game::{GameError, Labels, Lottery, ProductSpace, UtilityTable};
use crate::numeric::{rat, Rational};
use crate::scf::Scf;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// `A`, `B`, `C`, ...
pub fn agent_names(n: usize) -> Result<Vec<String>, BuildError> {
    if n == 0 || n > 26 {
        return Err(BuildError::Param(format!("agent count {n} outside 1..=26")));
    }
    Ok((0..n)
        .map(|i| ((b'A' + i as u8) as char).to_string())
        .collect())
}

/// Enumerates every type profile, interns the outcomes it produces in order of
/// first appearance, and tabulates utilities on those outcomes.
pub(crate) fn build_scf<K: Clone + Eq + Hash>(
    agents: Vec<String>,
    types: Vec<Vec<String>>,
    outcome: impl Fn(&[usize]) -> Vec<(K, Rational)>,
    label: impl Fn(&K) -> String,
    utility: impl Fn(usize, usize, &K) -> Rational,
) -> Result<Scf, BuildError> {
    let agents = Labels::new(agents)?;
    let types = types
        .into_iter()
        .map(Labels::new)
        .collect::<Result<Vec<_>, _>>()?;
    let space = ProductSpace::new(types.iter().map(Labels::len).collect());
    let mut keys: Vec<K> = Vec::new();
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut map = Vec::with_capacity(space.len());
    for profile in space.iter() {
        let entries = outcome(&profile)
            .into_iter()
            .map(|(k, w)| {
                let id = *index.entry(k.clone()).or_insert_with(|| {
                    keys.push(k);
                    keys.len() - 1
                });
                (id, w)
            })
            .collect::<Vec<_>>();
        map.push(Lottery::new(entries)?);
    }
    let outcomes = Labels::new(keys.iter().map(&label))?;
    let utilities = UtilityTable::from_fn(&types, keys.len(), |i, t, o| utility(i, t, &keys[o]));
    Ok(Scf::new(agents, types, outcomes, map, utilities)?)
}

/// Label for a grid value: `L`/`M`/`H` on three-point grids, the rational otherwise.
pub(crate) fn grid_labels(grid: &[Rational]) -> Vec<String> {
    if grid.len() == 3 {
        vec!["L".into(), "M".into(), "H".into()]
    } else {
        grid.iter().map(crate::numeric::format_rational).collect()
    }
}

pub(crate) fn check_grid(grid: &[Rational]) -> Result<(), BuildError> {
    if grid.is_empty() {
        return Err(BuildError::Param("empty grid".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BuildError::Param("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The six desk-scale instances used for property classification.
///
/// Auction and pivotal instances use three agents: with two agents on a
/// three-point grid both satisfy the outcome rectangular property.
pub fn default_instances() -> Vec<(&'static str, Scf)> {
    let grid3 = vec![rat(0, 1), rat(1, 2), rat(1, 1)];
    vec![
        ("ttc", build_ttc(&ExchangeSpec::new(3)).expect("ttc")),
        (
            "uniform",
            build_uniform_rule(&UniformSpec::default_instance()).expect("uniform"),
        ),
        (
            "median",
            build_median_voting(&MedianSpec::default_instance()).expect("median"),
        ),
        (
            "second-price",
            build_second_price(&AuctionSpec::new(3, grid3)).expect("second price"),
        ),
        (
            "pivotal",
            build_pivotal(&PivotalSpec::default_instance()).expect("pivotal"),
        ),
        (
            "spda",
            build_spda(&SchoolChoiceSpec::default_instance()).expect("spda"),
        ),
    ]
}
