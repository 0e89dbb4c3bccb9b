//! Complete-information payoffs of a two-bidder second-price auction.
//!
//! Bidder A values the good at 1/2, bidder B at 1. Rows are A's bid, columns B's.

use empeq::game::Prior;
use empeq::mechanisms::{build_second_price, AuctionSpec};
use empeq::numeric::{format_rational, int, rat};

fn main() {
    let scf =
        build_second_price(&AuctionSpec::new(2, vec![int(0), rat(1, 2), int(1)])).expect("auction");
    let (m, h) = (1, 2);
    let game = scf
        .direct_revelation_game(Prior::degenerate(vec![3, 3], &[m, h]).expect("prior"))
        .expect("game");

    let bids = ["L", "M", "H"];
    println!("{:>4} {:>14} {:>14} {:>14}", "A\\B", "H", "M", "L");
    for a in [2, 1, 0] {
        let cells: Vec<String> = [2, 1, 0]
            .iter()
            .map(|&b| {
                let u = game.pure_payoffs(&[m, h], &[a, b]);
                format!("({}, {})", format_rational(&u[0]), format_rational(&u[1]))
            })
            .collect();
        println!(
            "{:>4} {:>14} {:>14} {:>14}",
            bids[a], cells[0], cells[1], cells[2]
        );
    }
}
