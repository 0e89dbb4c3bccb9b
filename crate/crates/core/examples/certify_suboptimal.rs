//! Builds a sequence of monotone quantal response equilibria converging to the
//! auction equilibrium where the low bidder wins the good at price 0.

use empeq::game::{Prior, StrategyProfile};
use empeq::mechanisms::{build_second_price, AuctionSpec};
use empeq::numeric::{int, rat};
use empeq::solvers::{certify_empirical, HomotopySchedule};

fn main() {
    let scf =
        build_second_price(&AuctionSpec::new(2, vec![int(0), rat(1, 2), int(1)])).expect("auction");
    let game = scf
        .direct_revelation_game(Prior::degenerate(vec![3, 3], &[1, 2]).expect("prior"))
        .expect("game");
    // A mixes between bidding 0 and 1/2; B bids 1.
    let target = StrategyProfile::from_fn(&game, |i, _| {
        if i == 0 {
            vec![0.5, 0.5, 0.0]
        } else {
            vec![0.0, 0.0, 1.0]
        }
    });

    let cert = certify_empirical(&game, &target, &HomotopySchedule::default())
        .expect("target is an equilibrium");
    println!("verdict: {:?}", cert.verdict);
    for step in &cert.sequence {
        println!(
            "δ = {:e}  distance {:.3e}  monotone {}  {:?}",
            step.delta,
            step.distance,
            step.report.verdict,
            step.profile.get(0, 1).expect("supported")
        );
    }
}
