use super::{agent_names, build_scf, permutations, BuildError};
use crate::numeric::{int, Rational};
use crate::scf::Scf;

/// Housing market: agent `i` owns house `i`; types are strict orders over houses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeSpec {
    pub agents: usize,
}

impl ExchangeSpec {
    pub fn new(agents: usize) -> Self {
        Self { agents }
    }
}

/// Iterated top-cycle removal. `prefs[i]` lists house indices best first;
/// returns the house assigned to each agent.
pub fn top_trading_cycles(prefs: &[Vec<usize>]) -> Vec<usize> {
    let n = prefs.len();
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut remaining = n;
    while remaining > 0 {
        // Each remaining agent points to the owner of the best remaining house.
        let points: Vec<usize> = (0..n)
            .map(|i| {
                if assigned[i].is_some() {
                    return usize::MAX;
                }
                *prefs[i]
                    .iter()
                    .find(|&&h| assigned[h].is_none())
                    .expect("an unassigned agent's own house remains")
            })
            .collect();
        let start = (0..n)
            .find(|&i| assigned[i].is_none())
            .expect("remaining agent");
        // Walk until a node repeats; the repeated node lies on a cycle.
        let mut seen = vec![false; n];
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = points[cur];
        }
        let first = cur;
        loop {
            assigned[cur] = Some(points[cur]);
            remaining -= 1;
            cur = points[cur];
            if cur == first {
                break;
            }
        }
    }
    assigned.into_iter().map(|h| h.expect("assigned")).collect()
}

/// Top trading cycles on the full strict-order domain, rank utilities
/// (top house = number of houses, bottom = 1).
pub fn build_ttc(spec: &ExchangeSpec) -> Result<Scf, BuildError> {
    let n = spec.agents;
    if n < 2 {
        return Err(BuildError::Param(
            "exchange needs at least two agents".into(),
        ));
    }
    if n > 5 {
        return Err(BuildError::Param(
            "exchange instances above 5 agents are not desk-scale".into(),
        ));
    }
    let agents = agent_names(n)?;
    let houses: Vec<String> = agents.iter().map(|a| format!("h{a}")).collect();
    let orders = permutations(n);
    let order_labels: Vec<String> = orders
        .iter()
        .map(|o| {
            o.iter()
                .map(|&h| houses[h].as_str())
                .collect::<Vec<_>>()
                .join(">")
        })
        .collect();
    let names = agents.clone();
    build_scf(
        agents,
        vec![order_labels; n],
        |profile| {
            let prefs: Vec<Vec<usize>> = profile.iter().map(|&t| orders[t].clone()).collect();
            vec![(top_trading_cycles(&prefs), int(1))]
        },
        |assignment| {
            assignment
                .iter()
                .enumerate()
                .map(|(i, &h)| format!("{}:{}", names[i], houses[h]))
                .collect::<Vec<_>>()
                .join(" ")
        },
        |i, t, assignment| {
            let rank = orders[t]
                .iter()
                .position(|&h| h == assignment[i])
                .expect("house ranked");
            Rational::from_integer(((n - rank) as i64).into())
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_agents_trade_iff_both_prefer_other() {
        assert_eq!(top_trading_cycles(&[vec![1, 0], vec![0, 1]]), vec![1, 0]);
        assert_eq!(top_trading_cycles(&[vec![0, 1], vec![0, 1]]), vec![0, 1]);
        assert_eq!(top_trading_cycles(&[vec![1, 0], vec![1, 0]]), vec![0, 1]);
    }

    #[test]
    fn three_cycle() {
        assert_eq!(
            top_trading_cycles(&[vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]]),
            vec![1, 2, 0]
        );
    }
}
