use super::payoff::exact_payoff_tensor;
use super::{Mechanism, ProductSpace, UtilityTable};
use crate::numeric::Rational;

/// How one message compares with another across a set of opponent profiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// Strictly better against every opponent profile.
    Strict,
    /// Never worse, strictly better somewhere.
    Weak,
    /// Identical payoffs everywhere.
    Equivalent,
    None,
}

/// Opponent message profiles drawn from `allowed[j]` for each opponent `j`.
fn opponent_profiles(mech: &Mechanism, agent: usize, allowed: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = mech.n_agents();
    let mut out = vec![vec![0usize; n]];
    for j in (0..n).filter(|&j| j != agent) {
        let mut next = Vec::with_capacity(out.len() * allowed[j].len());
        for p in &out {
            for &m in &allowed[j] {
                let mut q = p.clone();
                q[j] = m;
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn compare(
    payoffs: &[Rational],
    space: &ProductSpace,
    agent: usize,
    m: usize,
    r: usize,
    opponents: &[Vec<usize>],
) -> Dominance {
    let mut all_strict = true;
    let mut any_strict = false;
    for base in opponents {
        let k = space.index(base);
        let a = &payoffs[space.with_coord(k, agent, m)];
        let b = &payoffs[space.with_coord(k, agent, r)];
        if a < b {
            return Dominance::None;
        }
        if a > b {
            any_strict = true;
        } else {
            all_strict = false;
        }
    }
    match (all_strict, any_strict) {
        (true, true) => Dominance::Strict,
        (_, true) => Dominance::Weak,
        _ => Dominance::Equivalent,
    }
}

/// How `m` compares with `r` for `(agent, ty)` against opponents restricted to `allowed`.
pub fn dominance(
    mech: &Mechanism,
    utilities: &UtilityTable,
    agent: usize,
    ty: usize,
    m: usize,
    r: usize,
    allowed: &[Vec<usize>],
) -> Dominance {
    let payoffs = exact_payoff_tensor(mech, utilities, agent, ty);
    let opponents = opponent_profiles(mech, agent, allowed);
    compare(&payoffs, mech.space(), agent, m, r, &opponents)
}

fn all_messages(mech: &Mechanism) -> Vec<Vec<usize>> {
    mech.message_spaces()
        .iter()
        .map(|l| (0..l.len()).collect())
        .collect()
}

/// Messages `m_i` with `u_i(m_{-i}, m_i | θ_i) ≥ u_i(m_{-i}, r_i | θ_i)` for all `r_i`, `m_{-i}`.
pub fn weakly_dominant_messages(
    mech: &Mechanism,
    utilities: &UtilityTable,
    agent: usize,
    ty: usize,
) -> Vec<usize> {
    let payoffs = exact_payoff_tensor(mech, utilities, agent, ty);
    let space = mech.space();
    let n_own = mech.messages(agent).len();
    let opponents = opponent_profiles(mech, agent, &all_messages(mech));
    let mut dominant = vec![true; n_own];
    for base in &opponents {
        let k = space.index(base);
        let row: Vec<&Rational> = (0..n_own)
            .map(|m| &payoffs[space.with_coord(k, agent, m)])
            .collect();
        let best = row.iter().copied().max().expect("nonempty message space");
        for (m, u) in row.iter().enumerate() {
            if *u < best {
                dominant[m] = false;
            }
        }
    }
    (0..n_own).filter(|&m| dominant[m]).collect()
}

/// Messages strictly better than every other message against every opponent profile.
pub fn strictly_dominant_message(
    mech: &Mechanism,
    utilities: &UtilityTable,
    agent: usize,
    ty: usize,
) -> Option<usize> {
    let allowed = all_messages(mech);
    let payoffs = exact_payoff_tensor(mech, utilities, agent, ty);
    let opponents = opponent_profiles(mech, agent, &allowed);
    let n_own = mech.messages(agent).len();
    (0..n_own).find(|&m| {
        (0..n_own)
            .filter(|&r| r != m)
            .all(|r| compare(&payoffs, mech.space(), agent, m, r, &opponents) == Dominance::Strict)
    })
}

/// Surviving messages `[agent][type]` after iterated removal of weakly dominated messages.
///
/// Each round removes, simultaneously for every agent-type, every message weakly
/// dominated by another surviving message against the opponents' surviving
/// messages (union over opponent types). Payoff-equivalent duplicates are kept.
pub fn iterated_weak_dominance(
    mech: &Mechanism,
    utilities: &UtilityTable,
    n_types: &[usize],
) -> Vec<Vec<Vec<usize>>> {
    let n = mech.n_agents();
    let payoffs: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|i| {
            (0..n_types[i])
                .map(|t| exact_payoff_tensor(mech, utilities, i, t))
                .collect()
        })
        .collect();
    let mut surviving: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|i| vec![(0..mech.messages(i).len()).collect(); n_types[i]])
        .collect();
    loop {
        let allowed: Vec<Vec<usize>> = surviving
            .iter()
            .map(|types| {
                let mut u: Vec<usize> = types.iter().flatten().copied().collect();
                u.sort_unstable();
                u.dedup();
                u
            })
            .collect();
        let mut changed = false;
        let mut next = surviving.clone();
        for i in 0..n {
            let opponents = opponent_profiles(mech, i, &allowed);
            for t in 0..n_types[i] {
                let own = &surviving[i][t];
                next[i][t] = own
                    .iter()
                    .copied()
                    .filter(|&m| {
                        !own.iter().any(|&r| {
                            r != m
                                && matches!(
                                    compare(&payoffs[i][t], mech.space(), i, r, m, &opponents),
                                    Dominance::Strict | Dominance::Weak
                                )
                        })
                    })
                    .collect();
                changed |= next[i][t].len() != own.len();
            }
        }
        surviving = next;
        if !changed {
            return surviving;
        }
    }
}
