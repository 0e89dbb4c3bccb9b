use num_traits::Signed;

use super::{agent_names, build_scf, check_grid, BuildError};
use crate::numeric::{format_rational, int, Rational};
use crate::scf::Scf;

/// Division of `amount` among agents with single-peaked preferences; peaks on `grid`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformSpec {
    pub agents: usize,
    pub amount: Rational,
    pub grid: Vec<Rational>,
}

impl UniformSpec {
    pub fn new(agents: usize, amount: Rational, grid: Vec<Rational>) -> Self {
        Self {
            agents,
            amount,
            grid,
        }
    }

    /// Three agents share 3 units; peaks in {0, 1, 2, 3}.
    pub fn default_instance() -> Self {
        Self::new(3, int(3), (0..4).map(int).collect())
    }
}

/// Uniform rule allocation for the given peaks.
///
/// Excess demand: each gets `min(peak, λ)`; excess supply: `max(peak, λ)`, with
/// `λ` solving feasibility exactly.
pub fn uniform_allocation(peaks: &[Rational], amount: &Rational) -> Vec<Rational> {
    let n = peaks.len();
    let total: Rational = peaks.iter().cloned().sum();
    if &total == amount {
        return peaks.to_vec();
    }
    let demand = &total > amount;
    let mut sorted = peaks.to_vec();
    sorted.sort();
    if !demand {
        sorted.reverse();
    }
    // The first k agents in `sorted` receive their peaks, the rest receive λ.
    let mut fixed = Rational::from_integer(0.into());
    let mut lambda = None;
    for (k, peak) in sorted.iter().enumerate() {
        let candidate = (amount - &fixed) / int((n - k) as i64);
        let fits = if demand {
            candidate <= *peak
        } else {
            candidate >= *peak
        };
        if fits {
            lambda = Some(candidate);
            break;
        }
        fixed += peak;
    }
    let lambda = lambda.expect("feasible rationing level");
    peaks
        .iter()
        .map(|p| {
            if demand {
                p.clone().min(lambda.clone())
            } else {
                p.clone().max(lambda.clone())
            }
        })
        .collect()
}

/// Uniform rule scf with utilities `-|allocation - peak|`.
pub fn build_uniform_rule(spec: &UniformSpec) -> Result<Scf, BuildError> {
    if spec.agents == 0 {
        return Err(BuildError::Param("need at least one agent".into()));
    }
    if spec.amount.is_negative() {
        return Err(BuildError::Param("negative amount".into()));
    }
    check_grid(&spec.grid)?;
    let agents = agent_names(spec.agents)?;
    let labels: Vec<String> = spec.grid.iter().map(format_rational).collect();
    let grid = &spec.grid;
    build_scf(
        agents,
        vec![labels; spec.agents],
        |profile| {
            let peaks: Vec<Rational> = profile.iter().map(|&t| grid[t].clone()).collect();
            vec![(uniform_allocation(&peaks, &spec.amount), int(1))]
        },
        |alloc| {
            format!(
                "({})",
                alloc
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        },
        |i, t, alloc| -(&alloc[i] - &grid[t]).abs(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn rationing_levels() {
        assert_eq!(
            uniform_allocation(&[int(1), int(1)], &int(1)),
            vec![rat(1, 2), rat(1, 2)]
        );
        assert_eq!(
            uniform_allocation(&[int(0), int(3), int(3)], &int(3)),
            vec![int(0), rat(3, 2), rat(3, 2)]
        );
        assert_eq!(
            uniform_allocation(&[int(0), int(0), int(2)], &int(3)),
            vec![rat(1, 2), rat(1, 2), int(2)]
        );
    }
}
