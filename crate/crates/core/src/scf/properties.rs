use std::collections::HashMap;
use std::fmt::Write as _;

use super::Scf;
use crate::numeric::Rational;

/// Outcome of a property check: holds, or fails with a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A type profile `θ`, an agent `i` and a report `τ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviationWitness {
    pub profile: Vec<usize>,
    pub agent: usize,
    pub report: usize,
}

impl DeviationWitness {
    /// `(θ_{-i}, τ_i)`.
    pub fn deviated_profile(&self) -> Vec<usize> {
        let mut p = self.profile.clone();
        p[self.agent] = self.report;
        p
    }

    pub fn describe(&self, scf: &Scf) -> String {
        format!(
            "θ=({}), agent {}, report {}",
            scf.profile_label(&self.profile),
            scf.agents().name(self.agent),
            scf.types(self.agent).name(self.report)
        )
    }
}

/// Two type profiles `{θ, τ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl PairWitness {
    pub fn describe(&self, scf: &Scf) -> String {
        format!(
            "θ=({}), τ=({})",
            scf.profile_label(&self.first),
            scf.profile_label(&self.second)
        )
    }
}

/// Exact tables shared by the checkers.
struct Tables {
    /// Lottery class of each profile; equal classes mean equal distributions.
    class: Vec<usize>,
    /// `welfare[i][t][profile]`.
    welfare: Vec<Vec<Vec<Rational>>>,
}

impl Tables {
    fn new(scf: &Scf) -> Self {
        let mut ids = HashMap::new();
        let class = scf
            .outcome_map()
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        let welfare = (0..scf.n_agents())
            .map(|i| {
                (0..scf.types(i).len())
                    .map(|t| {
                        let row = scf.utilities().row(i, t);
                        scf.outcome_map()
                            .iter()
                            .map(|l| l.expectation(row))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { class, welfare }
    }
}

fn sp(scf: &Scf, tab: &Tables) -> Verdict<DeviationWitness> {
    let space = scf.space();
    for k in 0..space.len() {
        for i in 0..scf.n_agents() {
            let own = space.coord(k, i);
            let w = &tab.welfare[i][own];
            for r in 0..scf.types(i).len() {
                if w[space.with_coord(k, i, r)] > w[k] {
                    return Verdict::Fails(DeviationWitness {
                        profile: space.coords(k),
                        agent: i,
                        report: r,
                    });
                }
            }
        }
    }
    Verdict::Holds
}

fn nbwo(scf: &Scf, tab: &Tables) -> Verdict<DeviationWitness> {
    let space = scf.space();
    for k in 0..space.len() {
        for i in 0..scf.n_agents() {
            let own = space.coord(k, i);
            let w = &tab.welfare[i][own];
            for r in 0..scf.types(i).len() {
                let d = space.with_coord(k, i, r);
                if w[d] == w[k] && tab.class[d] != tab.class[k] {
                    return Verdict::Fails(DeviationWitness {
                        profile: space.coords(k),
                        agent: i,
                        report: r,
                    });
                }
            }
        }
    }
    Verdict::Holds
}

fn euds(scf: &Scf, tab: &Tables) -> Verdict<DeviationWitness> {
    let space = scf.space();
    // Punishability depends only on (i, θ_i, τ_i).
    let mut punishable: HashMap<(usize, usize, usize), bool> = HashMap::new();
    for k in 0..space.len() {
        for i in 0..scf.n_agents() {
            let own = space.coord(k, i);
            let w = &tab.welfare[i][own];
            for r in 0..scf.types(i).len() {
                let d = space.with_coord(k, i, r);
                if w[d] != w[k] || tab.class[d] == tab.class[k] {
                    continue;
                }
                let ok = *punishable.entry((i, own, r)).or_insert_with(|| {
                    (0..space.len())
                        .filter(|&q| space.coord(q, i) == own)
                        .any(|q| w[q] > w[space.with_coord(q, i, r)])
                });
                if !ok {
                    return Verdict::Fails(DeviationWitness {
                        profile: space.coords(k),
                        agent: i,
                        report: r,
                    });
                }
            }
        }
    }
    Verdict::Holds
}

fn orp(scf: &Scf, tab: &Tables) -> Verdict<PairWitness> {
    let space = scf.space();
    let n = scf.n_agents();
    for a in 0..space.len() {
        for b in 0..space.len() {
            if a == b || tab.class[a] == tab.class[b] {
                continue;
            }
            // (θ_i, τ_{-i}) is τ with coordinate i taken from θ.
            let premise = (0..n)
                .all(|i| tab.class[space.with_coord(b, i, space.coord(a, i))] == tab.class[b]);
            if premise {
                return Verdict::Fails(PairWitness {
                    first: space.coords(a),
                    second: space.coords(b),
                });
            }
        }
    }
    Verdict::Holds
}

/// Strategy-proofness: `u_i(g(θ)|θ_i) ≥ u_i(g(θ_{-i}, τ_i)|θ_i)` everywhere.
pub fn check_strategy_proof(scf: &Scf) -> Verdict<DeviationWitness> {
    sp(scf, &Tables::new(scf))
}

/// Non-bossiness in welfare-outcome: equal own welfare implies equal outcome.
pub fn check_non_bossy(scf: &Scf) -> Verdict<DeviationWitness> {
    nbwo(scf, &Tables::new(scf))
}

/// Essentially unique dominant strategies: every welfare-neutral, outcome-changing
/// misreport is strictly punished against some opponent report profile.
pub fn check_essentially_unique_dominant(scf: &Scf) -> Verdict<DeviationWitness> {
    euds(scf, &Tables::new(scf))
}

/// Outcome rectangular property: if `g(θ_i, τ_{-i}) = g(τ)` for every `i` then `g(θ) = g(τ)`.
pub fn check_outcome_rectangular(scf: &Scf) -> Verdict<PairWitness> {
    orp(scf, &Tables::new(scf))
}

/// The four verdicts for one scf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub strategy_proof: Verdict<DeviationWitness>,
    pub essentially_unique_dominant: Verdict<DeviationWitness>,
    pub non_bossy: Verdict<DeviationWitness>,
    pub outcome_rectangular: Verdict<PairWitness>,
}

impl PropertyReport {
    /// `[SP, EUDS, NBWO, ORP]`.
    pub fn signs(&self) -> [bool; 4] {
        [
            self.strategy_proof.holds(),
            self.essentially_unique_dominant.holds(),
            self.non_bossy.holds(),
            self.outcome_rectangular.holds(),
        ]
    }

    /// `"+ + - -"` style summary in the order of [`PropertyReport::signs`].
    pub fn sign_string(&self) -> String {
        self.signs()
            .iter()
            .map(|&b| if b { "+" } else { "-" })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// One line per property with witnesses rendered via the scf's labels.
    pub fn render(&self, scf: &Scf) -> String {
        let mut out = String::new();
        let dev = |name: &str, v: &Verdict<DeviationWitness>, out: &mut String| {
            let _ = match v {
                Verdict::Holds => writeln!(out, "{name}: holds"),
                Verdict::Fails(w) => writeln!(out, "{name}: fails at {}", w.describe(scf)),
            };
        };
        dev("strategy-proof", &self.strategy_proof, &mut out);
        dev(
            "essentially-unique-dominant",
            &self.essentially_unique_dominant,
            &mut out,
        );
        dev("non-bossy-welfare-outcome", &self.non_bossy, &mut out);
        let _ = match &self.outcome_rectangular {
            Verdict::Holds => writeln!(out, "outcome-rectangular: holds"),
            Verdict::Fails(w) => writeln!(out, "outcome-rectangular: fails at {}", w.describe(scf)),
        };
        out
    }
}

/// Runs all four checkers.
pub fn classify(scf: &Scf) -> PropertyReport {
    let tab = Tables::new(scf);
    PropertyReport {
        strategy_proof: sp(scf, &tab),
        essentially_unique_dominant: euds(scf, &tab),
        non_bossy: nbwo(scf, &tab),
        outcome_rectangular: orp(scf, &tab),
    }
}
