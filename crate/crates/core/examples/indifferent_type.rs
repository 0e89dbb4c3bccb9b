//! An indifferent type splits evenly across payoff-equivalent messages in the
//! limit, so adding copies of a message shifts the induced outcome.

use empeq::game::Prior;
use empeq::mechanisms::build_example1;
use empeq::numeric::to_f64;
use empeq::solvers::{trace_limiting_logistic, HomotopySchedule};

fn main() {
    for k in 1..=4 {
        let ex = build_example1(k).expect("k ≥ 1");
        let game = ex.enlarged_game(Prior::uniform(vec![1, 2])).expect("game");
        let trace = trace_limiting_logistic(&game, &HomotopySchedule::default()).expect("trace");
        let sigma = trace.limit.get(1, 0).expect("supported");
        let p_a: f64 = sigma
            .iter()
            .enumerate()
            .map(|(m, p)| p * to_f64(&game.mechanism().outcome(&[0, m]).prob(ex.outcome_a())))
            .sum();
        println!(
            "k = {k}: P(a) = {p_a:.6} (k/(k+1) = {:.6})",
            k as f64 / (k + 1) as f64
        );
    }
}
