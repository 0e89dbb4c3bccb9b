//! Two agents who each prefer the other's house. Both "keep" and "trade" are
//! pure equilibria; the logistic path selects trade and the dominant-support
//! test rules out keeping.

use empeq::game::{Prior, StrategyProfile};
use empeq::mechanisms::{build_ttc, ExchangeSpec};
use empeq::numeric::int;
use empeq::solvers::{
    enumerate_pure_nash, lemma1_support_test, trace_limiting_logistic, HomotopySchedule,
};

fn main() {
    let scf = build_ttc(&ExchangeSpec::new(2)).expect("ttc");
    let game = scf
        .direct_revelation_game(Prior::degenerate(vec![2, 2], &[1, 0]).expect("prior"))
        .expect("game");

    for eq in enumerate_pure_nash(&game, 100).expect("small game") {
        let a = eq[0][1].expect("A's type is supported");
        let b = eq[1][0].expect("B's type is supported");
        println!(
            "pure equilibrium: A reports {}, B reports {}",
            game.types(0).name(a),
            game.types(1).name(b)
        );
    }

    let trace = trace_limiting_logistic(&game, &HomotopySchedule::default()).expect("trace");
    for p in trace.points.iter().step_by(5) {
        let a = p.profile.get(0, 1).expect("supported")[1];
        println!("λ = {:>10.3}  P(A points at B's house) = {a:.6}", p.lambda);
    }
    println!("limit nash gap {:e}", trace.nash_gap);

    let keep = StrategyProfile::from_fn(&game, |i, _| {
        if i == 0 {
            vec![int(1), int(0)]
        } else {
            vec![int(0), int(1)]
        }
    });
    let verdict =
        lemma1_support_test(&game, &keep, int(0), int(0)).expect("keep is an equilibrium");
    println!(
        "keep/keep passes the dominant-support test: {}",
        verdict.passed
    );
}
