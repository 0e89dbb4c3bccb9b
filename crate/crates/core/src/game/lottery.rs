use num_traits::{One, Signed, Zero};

use super::GameError;
use crate::numeric::Rational;

/// Finite-support distribution over outcome indices with exact weights.
///
/// Entries are sorted by outcome index and carry strictly positive weight, so
/// structural equality is equality of distributions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lottery {
    entries: Vec<(usize, Rational)>,
}

impl Lottery {
    pub fn new(entries: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self, GameError> {
        let mut merged: Vec<(usize, Rational)> = Vec::new();
        let mut raw: Vec<(usize, Rational)> = entries.into_iter().collect();
        raw.sort_by_key(|(o, _)| *o);
        for (o, w) in raw {
            if w.is_negative() {
                return Err(GameError::InvalidLottery(format!(
                    "negative weight on outcome {o}"
                )));
            }
            match merged.last_mut() {
                Some((last, acc)) if *last == o => *acc += w,
                _ => merged.push((o, w)),
            }
        }
        merged.retain(|(_, w)| !w.is_zero());
        let total: Rational = merged.iter().map(|(_, w)| w.clone()).sum();
        if merged.is_empty() || !total.is_one() {
            return Err(GameError::InvalidLottery(format!("weights sum to {total}")));
        }
        Ok(Self { entries: merged })
    }

    pub fn degenerate(outcome: usize) -> Self {
        Self {
            entries: vec![(outcome, Rational::one())],
        }
    }

    /// Equal weight on each listed outcome (duplicates merge).
    pub fn uniform(outcomes: &[usize]) -> Self {
        let w = Rational::new(1.into(), (outcomes.len() as i64).into());
        Self::new(outcomes.iter().map(|&o| (o, w.clone()))).expect("uniform lottery")
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(o, _)| *o)
    }

    pub fn prob(&self, outcome: usize) -> Rational {
        self.entries
            .iter()
            .find(|(o, _)| *o == outcome)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_degenerate(&self) -> bool {
        self.entries.len() == 1
    }

    /// Expected value of `values[outcome]`.
    pub fn expectation(&self, values: &[Rational]) -> Rational {
        self.entries.iter().map(|(o, w)| w * &values[*o]).sum()
    }

    /// `alpha * self + (1 - alpha) * other`, for `alpha` in [0, 1].
    pub fn mix(&self, other: &Lottery, alpha: &Rational) -> Result<Lottery, GameError> {
        let beta = Rational::one() - alpha;
        Lottery::new(
            self.entries
                .iter()
                .map(|(o, w)| (*o, w * alpha))
                .chain(other.entries.iter().map(|(o, w)| (*o, w * &beta))),
        )
    }

    pub fn max_outcome(&self) -> usize {
        self.entries.last().map(|(o, _)| *o).unwrap_or(0)
    }
}
