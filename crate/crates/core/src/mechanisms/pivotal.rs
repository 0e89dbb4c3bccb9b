use num_traits::{Signed, Zero};

use super::{agent_names, build_scf, check_grid, BuildError};
use crate::numeric::{format_rational, int, rat, Rational};
use crate::scf::Scf;

/// Binary public project with cost shared equally; types are gross valuations.
#[derive(Clone, Debug, PartialEq)]
pub struct PivotalSpec {
    pub agents: usize,
    pub grid: Vec<Rational>,
    pub cost: Rational,
}

impl PivotalSpec {
    pub fn new(agents: usize, grid: Vec<Rational>, cost: Rational) -> Self {
        Self { agents, grid, cost }
    }

    /// Three agents, valuations {-1, 0, 1}, cost 1/2.
    pub fn default_instance() -> Self {
        Self::new(3, vec![int(-1), int(0), int(1)], rat(1, 2))
    }
}

/// `(built, taxes)`.
type Decision = (bool, Vec<Rational>);

/// Decision and Clarke taxes for reported gross valuations.
fn decide(values: &[Rational], share: &Rational) -> Decision {
    let net: Vec<Rational> = values.iter().map(|v| v - share).collect();
    let total: Rational = net.iter().cloned().sum();
    let built = !total.is_negative();
    let taxes = net
        .iter()
        .map(|own| {
            let others = &total - own;
            let best = if others.is_negative() {
                Rational::zero()
            } else {
                others.clone()
            };
            let realized = if built { others } else { Rational::zero() };
            best - realized
        })
        .collect();
    (built, taxes)
}

/// Clarke pivotal mechanism: build iff the reported net values sum to at least
/// zero; each agent pays the welfare loss imposed on the others.
pub fn build_pivotal(spec: &PivotalSpec) -> Result<Scf, BuildError> {
    if spec.agents < 2 {
        return Err(BuildError::Param(
            "pivotal mechanism needs at least two agents".into(),
        ));
    }
    if spec.cost.is_negative() {
        return Err(BuildError::Param("negative cost".into()));
    }
    check_grid(&spec.grid)?;
    let agents = agent_names(spec.agents)?;
    let share = &spec.cost / int(spec.agents as i64);
    let labels: Vec<String> = spec.grid.iter().map(format_rational).collect();
    let grid = &spec.grid;
    build_scf(
        agents,
        vec![labels; spec.agents],
        |profile| {
            let values: Vec<Rational> = profile.iter().map(|&t| grid[t].clone()).collect();
            vec![(decide(&values, &share), int(1))]
        },
        |(built, taxes)| {
            let t: Vec<String> = taxes.iter().map(format_rational).collect();
            format!(
                "{} t=({})",
                if *built { "build" } else { "skip" },
                t.join(",")
            )
        },
        |i, t, (built, taxes)| {
            let gain = if *built {
                &grid[t] - &share
            } else {
                Rational::zero()
            };
            gain - &taxes[i]
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clarke_taxes() {
        let share = rat(0, 1);
        assert_eq!(
            decide(&[int(1), int(1)], &share),
            (true, vec![int(0), int(0)])
        );
        // Agent 0 is pivotal: without agent 0 the others sum to -1/2 < 0.
        let (built, taxes) = decide(&[int(1), rat(-1, 2)], &share);
        assert!(built);
        assert_eq!(taxes, vec![rat(1, 2), int(0)]);
    }
}
