use num_traits::Zero;

use super::{agent_names, build_scf, check_grid, grid_labels, BuildError};
use crate::numeric::{format_rational, Rational};
use crate::scf::Scf;

/// Single-object auction among `bidders` with values and bids on `grid`.
#[derive(Clone, Debug, PartialEq)]
pub struct AuctionSpec {
    pub bidders: usize,
    pub grid: Vec<Rational>,
}

impl AuctionSpec {
    pub fn new(bidders: usize, grid: Vec<Rational>) -> Self {
        Self { bidders, grid }
    }
}

#[derive(Clone, Copy)]
enum Pricing {
    Second,
    First,
}

fn build(spec: &AuctionSpec, pricing: Pricing) -> Result<Scf, BuildError> {
    if spec.bidders < 2 {
        return Err(BuildError::Param(
            "an auction needs at least two bidders".into(),
        ));
    }
    check_grid(&spec.grid)?;
    let agents = agent_names(spec.bidders)?;
    let labels = grid_labels(&spec.grid);
    let grid = &spec.grid;
    let names = agents.clone();
    build_scf(
        agents,
        vec![labels; spec.bidders],
        |bids| {
            let top = bids.iter().copied().max().expect("bidders");
            let winners: Vec<usize> = (0..bids.len()).filter(|&i| bids[i] == top).collect();
            let w = Rational::new(1.into(), (winners.len() as i64).into());
            winners
                .iter()
                .map(|&i| {
                    let price = match pricing {
                        Pricing::Second => (0..bids.len())
                            .filter(|&j| j != i)
                            .map(|j| bids[j])
                            .max()
                            .expect("another bidder"),
                        Pricing::First => bids[i],
                    };
                    ((i, price), w.clone())
                })
                .collect()
        },
        |&(winner, price)| format!("{}@{}", names[winner], format_rational(&grid[price])),
        |i, value, &(winner, price)| {
            if i == winner {
                &grid[value] - &grid[price]
            } else {
                Rational::zero()
            }
        },
    )
}

/// Second-price auction: highest bid wins (uniform tie-break), winner pays the
/// highest losing bid; quasi-linear utilities.
pub fn build_second_price(spec: &AuctionSpec) -> Result<Scf, BuildError> {
    build(spec, Pricing::Second)
}

/// First-price variant: the winner pays the submitted bid.
pub fn build_first_price(spec: &AuctionSpec) -> Result<Scf, BuildError> {
    build(spec, Pricing::First)
}
