//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use empeq::game::{
    dominance, iterated_weak_dominance, strictly_dominant_message, BayesianGame, Dominance, Prior,
    StrategyProfile,
};
use empeq::mechanisms::{
    build_example1, build_example5, build_second_price, build_spda, build_ttc, default_instances,
    AuctionSpec, ExchangeSpec, SchoolChoiceSpec,
};
use empeq::numeric::{int, rat, to_f64};
use empeq::scf::{classify, Scf};
use empeq::solvers::{
    certify_empirical, classify_revelation_equilibrium, enumerate_pure_nash, is_bayesian_nash,
    is_weakly_payoff_monotone, lemma1_support_test, qre_fixed_point, trace_limiting_logistic,
    CertificateVerdict, FixedPointConfig, HomotopySchedule, ResponseParams, TOL_P, TOL_U,
};
use empeq::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{random_prior, RawGame};

const L: usize = 0;
const M: usize = 1;
const H: usize = 2;
const SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn auction2() -> Scf {
    build_second_price(&AuctionSpec::new(2, vec![int(0), rat(1, 2), int(1)])).unwrap()
}

fn auction_game() -> BayesianGame {
    auction2()
        .direct_revelation_game(Prior::degenerate(vec![3, 3], &[M, H]).unwrap())
        .unwrap()
}

fn auction_cells() -> Outcome {
    let game = auction_game();
    let order = [H, M, L];
    let expected = [
        [(rat(-1, 4), int(0)), (int(0), int(0)), (rat(1, 2), int(0))],
        [
            (int(0), rat(1, 2)),
            (int(0), rat(1, 4)),
            (rat(1, 2), int(0)),
        ],
        [(int(0), int(1)), (int(0), int(1)), (rat(1, 4), rat(1, 2))],
    ];
    for (r, &a) in order.iter().enumerate() {
        for (c, &b) in order.iter().enumerate() {
            let u = game.pure_payoffs(&[M, H], &[a, b]);
            ensure((u[0].clone(), u[1].clone()) == expected[r][c], || {
                format!("cell ({r},{c}) is {u:?}")
            })?;
        }
    }
    Ok("9/9 cells exact".into())
}

fn default_signs() -> Outcome {
    let expected = [
        ("second-price", "+ + - -"),
        ("ttc", "+ + + -"),
        ("pivotal", "+ + - -"),
        ("spda", "+ + - -"),
        ("uniform", "+ + + -"),
        ("median", "+ + + -"),
    ];
    let instances = default_instances();
    let signs: Vec<(String, String)> = instances
        .par_iter()
        .map(|(name, scf)| (name.to_string(), classify(scf).sign_string()))
        .collect();
    for (name, want) in expected {
        let got = signs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s.as_str());
        ensure(got == Some(want), || {
            format!("{name}: got {got:?}, want {want}")
        })?;
    }
    Ok("24/24 signs".into())
}

fn noisy_profile(game: &BayesianGame, e: &Rational) -> StrategyProfile<Rational> {
    let half = rat(1, 2);
    let a = vec![&half - e, half.clone(), e.clone()];
    let b = vec![e.clone(), e.clone(), int(1) - int(2) * e];
    StrategyProfile::from_fn(game, |i, _| if i == 0 { a.clone() } else { b.clone() })
}

fn noisy_profiles_near_the_limit() -> Outcome {
    let game = auction_game();
    for e in [rat(1, 20), rat(1, 100)] {
        let report =
            is_weakly_payoff_monotone(&game, &noisy_profile(&game, &e), int(0), int(0)).unwrap();
        ensure(report.verdict, || format!("ε={e}: {:?}", report.violations))?;
    }
    let limit = noisy_profile(&game, &int(0));
    ensure(is_bayesian_nash(&game, &limit, int(0)).unwrap(), || {
        "limit is not a Nash equilibrium".into()
    })?;
    Ok("monotone at ε=1/20, 1/100; limit is Nash".into())
}

fn ttc_trade_game() -> BayesianGame {
    let scf = build_ttc(&ExchangeSpec::new(2)).unwrap();
    scf.direct_revelation_game(Prior::degenerate(vec![2, 2], &[1, 0]).unwrap())
        .unwrap()
}

fn ttc_prediction() -> Outcome {
    let game = ttc_trade_game();
    let trace =
        trace_limiting_logistic(&game, &HomotopySchedule::default()).map_err(|e| e.to_string())?;
    // A trades by pointing at B's house (message 1), B by pointing at A's (message 0).
    let pa = trace.limit.get(0, 1).unwrap()[1];
    let pb = trace.limit.get(1, 0).unwrap()[0];
    ensure(pa >= 1.0 - 1e-6 && pb >= 1.0 - 1e-6, || {
        format!("trade probabilities {pa}, {pb}")
    })?;
    let eqs = enumerate_pure_nash(&game, 1000).unwrap();
    ensure(eqs.len() == 2, || format!("{} pure equilibria", eqs.len()))?;
    let selfish = StrategyProfile::from_fn(&game, |i, _| {
        if i == 0 {
            vec![int(1), int(0)]
        } else {
            vec![int(0), int(1)]
        }
    });
    let verdict =
        lemma1_support_test(&game, &selfish, int(0), int(0)).map_err(|e| e.to_string())?;
    ensure(!verdict.passed, || {
        "support test accepted (self, self)".into()
    })?;
    Ok(format!(
        "trade with prob ≥ {:.9}; 2 pure equilibria; (self, self) rejected",
        pa.min(pb)
    ))
}

fn truthful_outcomes() -> Outcome {
    let spda = build_spda(&SchoolChoiceSpec::default_instance()).unwrap();
    let cases: Vec<(&str, Scf, u64)> = [("second-price", auction2()), ("spda", spda)]
        .into_iter()
        .flat_map(|(name, scf)| (0..20).map(move |k| (name, scf.clone(), k)))
        .collect();
    let results: Vec<Result<f64, String>> = cases
        .par_iter()
        .map(|(name, scf, k)| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (k * 7919) ^ name.len() as u64);
            let sizes = scf.type_spaces().iter().map(|l| l.len()).collect();
            let prior = random_prior(&mut rng, sizes, true);
            let game = scf.direct_revelation_game(prior.clone()).unwrap();
            let trace = trace_limiting_logistic(&game, &HomotopySchedule::default())
                .map_err(|e| format!("{name} prior {k}: {e}"))?;
            let report = classify_revelation_equilibrium(scf, &prior, &trace.limit, 1e-6, 1e-6)
                .map_err(|e| format!("{name} prior {k}: {e}"))?;
            Ok(report.max_outcome_deviation)
        })
        .collect();
    let mut worst = 0.0f64;
    for (r, (name, _, k)) in results.into_iter().zip(&cases) {
        let d = r?;
        ensure(d < 1e-4, || {
            format!("{name} prior {k}: outcome deviation {d:e}")
        })?;
        worst = worst.max(d);
    }
    Ok(format!("40 traces, max outcome deviation {worst:.1e}"))
}

fn suboptimal_certificate() -> Outcome {
    let game = auction_game();
    let target = StrategyProfile::from_fn(&game, |i, _| {
        if i == 0 {
            vec![0.5, 0.5, 0.0]
        } else {
            vec![0.0, 0.0, 1.0]
        }
    });
    let cert = certify_empirical(&game, &target, &HomotopySchedule::default())
        .map_err(|e| e.to_string())?;
    ensure(
        cert.verdict == CertificateVerdict::CertifiedApproachable,
        || format!("{:?}", cert.verdict),
    )?;
    let d = cert.final_distance().unwrap_or(f64::INFINITY);
    ensure(d < 1e-7, || format!("final distance {d:e}"))?;
    for (k, step) in cert.sequence.iter().enumerate() {
        let r = is_weakly_payoff_monotone(&game, &step.profile, TOL_P, TOL_U).unwrap();
        ensure(r.verdict, || format!("step {k} is not monotone"))?;
    }
    let scf = auction2();
    ensure(!empeq::scf::check_non_bossy(&scf).holds(), || {
        "auction is non-bossy".into()
    })?;
    Ok(format!(
        "{} monotone steps, distance {d:.1e}",
        cert.sequence.len()
    ))
}

fn indifferent_a_probability(k: Option<usize>) -> Result<f64, String> {
    let ex = build_example1(k.unwrap_or(1)).unwrap();
    let prior = Prior::uniform(vec![1, 2]);
    let game = match k {
        Some(_) => ex.enlarged_game(prior).unwrap(),
        None => ex.scf.direct_revelation_game(prior).unwrap(),
    };
    let trace =
        trace_limiting_logistic(&game, &HomotopySchedule::default()).map_err(|e| e.to_string())?;
    let sigma = trace.limit.get(1, 0).unwrap();
    Ok(sigma
        .iter()
        .enumerate()
        .map(|(m, p)| p * to_f64(&game.mechanism().outcome(&[0, m]).prob(ex.outcome_a())))
        .sum())
}

fn indifferent_probabilities() -> Outcome {
    let cases = [
        (None, 0.5),
        (Some(1), 0.5),
        (Some(2), 2.0 / 3.0),
        (Some(3), 0.75),
    ];
    let mut got = Vec::new();
    for (k, want) in cases {
        let p = indifferent_a_probability(k)?;
        ensure((p - want).abs() < 1e-6, || {
            format!("k={k:?}: {p} vs {want}")
        })?;
        got.push(format!("{p:.6}"));
    }
    Ok(format!("a-probabilities {}", got.join(", ")))
}

fn correspondence_claims() -> Outcome {
    let ex = build_example5(rat(1, 10)).unwrap();
    let mech = &ex.mechanism;
    let u = &ex.utilities;
    let strict = [(1, 0, 0), (1, 1, 1), (0, 1, 2), (0, 2, 3)];
    for (agent, ty, m) in strict {
        let got = strictly_dominant_message(mech, u, agent, ty);
        ensure(got == Some(m), || {
            format!("agent {agent} type {ty}: strictly dominant {got:?}, want {m}")
        })?;
    }
    let all: Vec<Vec<usize>> = vec![(0..4).collect(), (0..2).collect()];
    for (m, r) in [(0, 2), (1, 3)] {
        let d = dominance(mech, u, 0, 0, m, r, &all);
        ensure(d == Dominance::Weak, || {
            format!("m{} vs m{} for t1: {d:?}", m + 1, r + 1)
        })?;
    }
    ensure(ex.find_strategy_proof_selection(64).is_none(), || {
        "grid contains a strategy-proof selection".into()
    })?;

    let survivors = iterated_weak_dominance(mech, u, &[3, 2]);
    for t1 in 0..3 {
        for t2 in 0..2 {
            for &m in &survivors[0][t1] {
                for &n in &survivors[1][t2] {
                    let lottery = mech.outcome(&[m, n]);
                    ensure(ex.correspondence.contains(&[t1, t2], lottery), || {
                        format!("({m},{n}) at ({t1},{t2}) leaves the correspondence")
                    })?;
                }
            }
        }
    }
    let selections = ex.correspondence.grid_selections(64).len();
    Ok(format!("4 strict + 2 weak dominance claims; 0/{selections} grid selections strategy-proof; survivors inside F"))
}

fn planted_dominance() -> Outcome {
    let results: Vec<Result<(), String>> = (0..200u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(k));
            let mut raw = RawGame::random(&mut rng, 3, 4, 2);
            let dominant = raw.plant_dominant(&mut rng);
            let game = raw.game(random_prior(&mut rng, raw.type_sizes(), true));
            let trace = trace_limiting_logistic(&game, &HomotopySchedule::default())
                .map_err(|e| format!("game {k}: {e}"))?;
            for (i, t, sigma) in trace.limit.entries() {
                let d = dominant[i][t];
                if let Some(r) = (0..sigma.len()).find(|&r| sigma[d] < sigma[r] - 1e-6) {
                    return Err(format!(
                        "game {k} agent {i} type {t}: σ(dominant)={} < σ({r})={}",
                        sigma[d], sigma[r]
                    ));
                }
            }
            Ok(())
        })
        .collect();
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    ensure(failures.is_empty(), || {
        format!("{} of 200 failed; first: {}", failures.len(), failures[0])
    })?;
    Ok("200/200 games".into())
}

fn monotone_fixed_points() -> Outcome {
    let results: Vec<Result<(), String>> = (0..500u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_mul(31).wrapping_add(k));
            let raw = RawGame::random(&mut rng, 3, 4, 2);
            let full = rng.gen_bool(0.5);
            let game = raw.game(random_prior(&mut rng, raw.type_sizes(), full));
            let lambda = rng.gen_range(0.0..5.0);
            let eps = rng.gen_range(0.01..0.99);
            let params = ResponseParams::kappa(&game, eps, lambda);
            let sol = qre_fixed_point(&game, &params, None, &FixedPointConfig::default())
                .map_err(|e| format!("case {k} (λ={lambda:.3}, ε={eps:.3}): {e}"))?;
            let report = is_weakly_payoff_monotone(&game, &sol.profile, TOL_P, TOL_U).unwrap();
            ensure(report.verdict, || {
                format!("case {k}: {} violations", report.violations.len())
            })
        })
        .collect();
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    ensure(failures.is_empty(), || {
        format!("{} of 500 failed; first: {}", failures.len(), failures[0])
    })?;
    Ok("500/500 fixed points monotone".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("auction payoff table", 1, auction_cells),
        ("property signs of the default instances", 30, default_signs),
        (
            "monotone noisy profiles near the suboptimal equilibrium",
            1,
            noisy_profiles_near_the_limit,
        ),
        ("TTC trade prediction", 5, ttc_prediction),
        (
            "truthful outcomes under random priors",
            300,
            truthful_outcomes,
        ),
        (
            "certified suboptimal auction equilibrium",
            60,
            suboptimal_certificate,
        ),
        (
            "indifferent-type outcome probabilities",
            60,
            indifferent_probabilities,
        ),
        (
            "correspondence without strategy-proof selection",
            120,
            correspondence_claims,
        ),
        (
            "dominant actions keep the most weight",
            600,
            planted_dominance,
        ),
        (
            "monotone quantal response fixed points",
            300,
            monotone_fixed_points,
        ),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} {:>2} {name}: {detail} [{:.2} s]",
            k + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
