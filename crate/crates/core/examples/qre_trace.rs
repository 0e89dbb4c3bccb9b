//! Traces the logistic path of a school-choice game under a random prior and
//! compares the limit's outcomes with truthful reporting.

use empeq::game::Prior;
use empeq::mechanisms::{build_spda, SchoolChoiceSpec};
use empeq::numeric::rat;
use empeq::solvers::{classify_revelation_equilibrium, trace_limiting_logistic, HomotopySchedule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let scf = build_spda(&SchoolChoiceSpec::default_instance()).expect("spda");
    let sizes: Vec<usize> = scf.type_spaces().iter().map(|l| l.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let raw: Vec<i64> = (0..sizes.iter().product())
        .map(|_| rng.gen_range(1..=20))
        .collect();
    let total: i64 = raw.iter().sum();
    let prior = Prior::new(sizes, raw.into_iter().map(|w| rat(w, total)).collect()).expect("prior");
    let game = scf.direct_revelation_game(prior.clone()).expect("game");

    let trace = trace_limiting_logistic(&game, &HomotopySchedule::default()).expect("trace");
    for p in &trace.points {
        println!(
            "λ = {:>12.3}  residual {:.1e}  iterations {}",
            p.lambda, p.residual, p.iterations
        );
    }
    let report = classify_revelation_equilibrium(&scf, &prior, &trace.limit, 1e-6, 1e-6)
        .expect("limit is an equilibrium");
    println!(
        "truthful-outcome-equivalent: {} (max outcome deviation {:.1e})",
        report.truthful_equivalent, report.max_outcome_deviation
    );
}
