use num_traits::Signed;

use super::{agent_names, build_scf, check_grid, BuildError};
use crate::numeric::{format_rational, int, Rational};
use crate::scf::Scf;

/// Median voting over alternatives on `grid`; voters' types are their peaks.
#[derive(Clone, Debug, PartialEq)]
pub struct MedianSpec {
    pub voters: usize,
    pub grid: Vec<Rational>,
}

impl MedianSpec {
    pub fn new(voters: usize, grid: Vec<Rational>) -> Self {
        Self { voters, grid }
    }

    /// Three voters, alternatives {1, ..., 5}.
    pub fn default_instance() -> Self {
        Self::new(3, (1..=5).map(int).collect())
    }
}

/// Outcome is the median reported peak; utilities `-|alternative - peak|`.
pub fn build_median_voting(spec: &MedianSpec) -> Result<Scf, BuildError> {
    if spec.voters.is_multiple_of(2) {
        return Err(BuildError::Param(
            "median voting needs an odd number of voters".into(),
        ));
    }
    check_grid(&spec.grid)?;
    let agents = agent_names(spec.voters)?;
    let labels: Vec<String> = spec.grid.iter().map(format_rational).collect();
    let grid = &spec.grid;
    build_scf(
        agents,
        vec![labels; spec.voters],
        |profile| {
            let mut p = profile.to_vec();
            p.sort_unstable();
            vec![(p[p.len() / 2], int(1))]
        },
        |&a| format_rational(&grid[a]),
        |_, t, &a| -(&grid[a] - &grid[t]).abs(),
    )
}
