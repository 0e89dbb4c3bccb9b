use empeq::mechanisms::{
    build_example1, build_example5, build_median_voting, build_pivotal, build_second_price,
    build_spda, build_ttc, build_uniform_rule, default_instances, deferred_acceptance,
    top_trading_cycles, uniform_allocation, AuctionSpec, BuildError, ExchangeSpec, MedianSpec,
    PivotalSpec, SchoolChoiceSpec, UniformSpec,
};
use empeq::numeric::{int, rat};
use empeq::scf::{
    check_essentially_unique_dominant, check_non_bossy, check_strategy_proof, classify, Scf,
};
use empeq::Rational;

fn grid3() -> Vec<Rational> {
    vec![int(0), rat(1, 2), int(1)]
}

fn outcome_label(scf: &Scf, profile: &[usize]) -> String {
    scf.lottery_label(scf.outcome(profile))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[test]
fn every_default_instance_is_strategy_proof() {
    for (name, scf) in default_instances() {
        assert!(check_strategy_proof(&scf).holds(), "{name}");
    }
    let extra = [
        build_second_price(&AuctionSpec::new(2, grid3())).unwrap(),
        build_ttc(&ExchangeSpec::new(2)).unwrap(),
        build_pivotal(&PivotalSpec::new(2, vec![int(-1), int(0), int(1)], int(0))).unwrap(),
        build_example1(3).unwrap().scf,
    ];
    for scf in &extra {
        assert!(check_strategy_proof(scf).holds());
    }
}

#[test]
fn auction_cells_from_the_builder() {
    let scf = build_second_price(&AuctionSpec::new(2, grid3())).unwrap();
    // θ = (M, H); reports (H, H) and (L, L).
    let hh = scf.outcome(&[2, 2]);
    assert_eq!(scf.utilities().of_lottery(0, 1, hh), rat(-1, 4));
    assert_eq!(scf.utilities().of_lottery(1, 2, hh), int(0));
    let ll = scf.outcome(&[0, 0]);
    assert_eq!(scf.utilities().of_lottery(0, 1, ll), rat(1, 4));
    assert_eq!(scf.utilities().of_lottery(1, 2, ll), rat(1, 2));
}

#[test]
fn three_way_tie_splits_the_good() {
    let scf = build_second_price(&AuctionSpec::new(3, grid3())).unwrap();
    for v in 0..3 {
        let lottery = scf.outcome(&[v, v, v]);
        assert_eq!(lottery.entries().len(), 3);
        for ty in 0..3 {
            let expected = (&grid3()[ty] - &grid3()[v]) / int(3);
            assert_eq!(scf.utilities().of_lottery(0, ty, lottery), expected);
        }
    }
}

#[test]
fn second_price_winner_and_revenue() {
    let grid = grid3();
    let scf = build_second_price(&AuctionSpec::new(3, grid.clone())).unwrap();
    for bids in scf.space().iter() {
        let top = *bids.iter().max().unwrap();
        let mut sorted = bids.clone();
        sorted.sort_unstable();
        let second = sorted[sorted.len() - 2];
        let lottery = scf.outcome(&bids);
        for (o, _) in lottery.entries() {
            let label = scf.outcomes().name(*o);
            let (winner, price) = label.split_once('@').unwrap();
            let w = (winner.as_bytes()[0] - b'A') as usize;
            assert_eq!(bids[w], top, "{label} at {bids:?}");
            assert_eq!(price, empeq::numeric::format_rational(&grid[second]));
        }
    }
}

#[test]
fn ttc_two_agents_swap_when_both_prefer_the_other_house() {
    let scf = build_ttc(&ExchangeSpec::new(2)).unwrap();
    let a = scf.types(0).index("hB>hA").unwrap();
    let b = scf.types(1).index("hA>hB").unwrap();
    assert_eq!(outcome_label(&scf, &[a, b]), "A:hB B:hA");
}

#[test]
fn ttc_owner_ranking_own_house_first_keeps_it() {
    let scf = build_ttc(&ExchangeSpec::new(3)).unwrap();
    for p in scf.space().iter() {
        let label = outcome_label(&scf, &p);
        for (i, agent) in ["A", "B", "C"].iter().enumerate() {
            let ty = scf.types(i).name(p[i]);
            if ty.starts_with(&format!("h{agent}")) {
                assert!(
                    label.contains(&format!("{agent}:h{agent}")),
                    "{label} at {p:?}"
                );
            }
        }
    }
}

#[test]
fn ttc_three_cycle_rotates() {
    assert_eq!(
        top_trading_cycles(&[vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]]),
        vec![1, 2, 0]
    );
}

#[test]
fn ttc_is_individually_rational_and_efficient() {
    for n in 2..=3 {
        let orders = permutations(n);
        let rank = |order: &[usize], h: usize| n - order.iter().position(|&x| x == h).unwrap();
        let mut profile = vec![0usize; n];
        loop {
            let prefs: Vec<Vec<usize>> = profile.iter().map(|&k| orders[k].clone()).collect();
            let assignment = top_trading_cycles(&prefs);
            for i in 0..n {
                assert!(
                    rank(&prefs[i], assignment[i]) >= rank(&prefs[i], i),
                    "IR at {prefs:?}"
                );
            }
            for alt in permutations(n) {
                let weakly =
                    (0..n).all(|i| rank(&prefs[i], alt[i]) >= rank(&prefs[i], assignment[i]));
                let strictly =
                    (0..n).any(|i| rank(&prefs[i], alt[i]) > rank(&prefs[i], assignment[i]));
                assert!(
                    !(weakly && strictly),
                    "{alt:?} dominates {assignment:?} at {prefs:?}"
                );
            }
            let mut k = 0;
            while k < n {
                profile[k] += 1;
                if profile[k] < orders.len() {
                    break;
                }
                profile[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
}

#[test]
fn pivotal_taxes() {
    let grid = vec![int(-1), int(0), int(1)];
    let scf = build_pivotal(&PivotalSpec::new(2, grid.clone(), int(0))).unwrap();
    let one = 2;
    let minus_one = 0;
    assert_eq!(outcome_label(&scf, &[one, one]), "build t=(0,0)");
    // Agent A is pivotal at (1, -1): without it the project is skipped.
    assert_eq!(outcome_label(&scf, &[one, minus_one]), "build t=(1,0)");
    assert_eq!(scf.welfare(0, one, &[one, minus_one]), int(0));

    let costly = build_pivotal(&PivotalSpec::new(2, grid, int(1))).unwrap();
    assert_eq!(outcome_label(&costly, &[one, one]), "build t=(0,0)");
}

#[test]
fn pivotal_violates_non_bossiness_only() {
    let scf = build_pivotal(&PivotalSpec::default_instance()).unwrap();
    assert!(check_essentially_unique_dominant(&scf).holds());
    assert!(!check_non_bossy(&scf).holds());
}

#[test]
fn spda_aligned_two_by_two_is_assortative() {
    let m = deferred_acceptance(
        &[vec![0, 1], vec![0, 1]],
        &[1, 1],
        &[vec![0, 1], vec![0, 1]],
    );
    assert_eq!(m, vec![Some(0), Some(1)]);
}

#[test]
fn spda_default_is_bossy_with_essentially_unique_dominance() {
    let scf = build_spda(&SchoolChoiceSpec::default_instance()).unwrap();
    let v = check_non_bossy(&scf);
    let w = v
        .witness()
        .expect("a student can move another without changing its own seat");
    let d = w.deviated_profile();
    assert_eq!(
        scf.welfare(w.agent, w.profile[w.agent], &w.profile),
        scf.welfare(w.agent, w.profile[w.agent], &d)
    );
    assert_ne!(scf.outcome(&w.profile), scf.outcome(&d));
    assert!(check_essentially_unique_dominant(&scf).holds());
}

#[test]
fn spda_matchings_are_stable() {
    let spec = SchoolChoiceSpec::default_instance();
    let orders = permutations(3);
    for a in 0..6 {
        for b in 0..6 {
            for c in 0..6 {
                let prefs = vec![orders[a].clone(), orders[b].clone(), orders[c].clone()];
                let m = deferred_acceptance(&prefs, &spec.capacities, &spec.priorities);
                let prio =
                    |s: usize, i: usize| spec.priorities[s].iter().position(|&x| x == i).unwrap();
                let pref = |i: usize, s: usize| prefs[i].iter().position(|&x| x == s).unwrap();
                for i in 0..3 {
                    for s in 0..3 {
                        let wants = m[i].is_none_or(|cur| pref(i, s) < pref(i, cur));
                        if !wants {
                            continue;
                        }
                        let holders: Vec<usize> = (0..3).filter(|&j| m[j] == Some(s)).collect();
                        let blocked = holders.len() < spec.capacities[s]
                            || holders.iter().any(|&j| prio(s, i) < prio(s, j));
                        assert!(!blocked, "({i},{s}) blocks {m:?} at {prefs:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn uniform_rule_allocations() {
    let peaks = vec![int(1), int(1), int(1)];
    assert_eq!(uniform_allocation(&peaks, &int(3)), peaks);
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
    assert_eq!(
        classify(&build_uniform_rule(&UniformSpec::default_instance()).unwrap()).sign_string(),
        "+ + + -"
    );
}

#[test]
fn median_voting() {
    let scf = build_median_voting(&MedianSpec::default_instance()).unwrap();
    let idx = |v: &str| scf.types(0).index(v).unwrap();
    for v in ["1", "3", "5"] {
        assert_eq!(outcome_label(&scf, &[idx(v), idx(v), idx(v)]), v);
    }
    assert_eq!(outcome_label(&scf, &[idx("1"), idx("2"), idx("5")]), "2");
    assert_eq!(classify(&scf).sign_string(), "+ + + -");
    let even = build_median_voting(&MedianSpec::new(2, vec![int(1), int(2)]));
    assert!(matches!(even, Err(BuildError::Param(msg)) if msg.contains("odd")));
}

#[test]
fn enlarged_mechanism_sizes() {
    for k in 1..=3 {
        let ex = build_example1(k).unwrap();
        assert_eq!(ex.enlarged.messages(1).len(), k + 1);
        let a = ex.outcome_a();
        assert_eq!(ex.scf.outcomes().name(a), "a");
        // Every m_l message yields a; the remaining message yields b.
        for m in 0..=k {
            let lottery = ex.enlarged.outcome(&[0, m]);
            assert_eq!(lottery.prob(a) == int(1), m >= 1);
        }
    }
    assert!(build_example1(0).is_err());
}

#[test]
fn correspondence_tables() {
    let eps = rat(1, 10);
    let ex = build_example5(eps.clone()).unwrap();
    let o = |name: &str| ex.outcomes.index(name).unwrap();
    assert_eq!(ex.utilities.get(0, 0, o("c")), &(rat(1, 2) - &eps));
    assert_eq!(ex.utilities.get(0, 0, o("d'")), &(rat(1, 2) - &eps));
    assert_eq!(ex.utilities.get(1, 0, o("b'")), &(int(1) - &eps));
    assert_eq!(ex.utilities.get(1, 1, o("a")), &(int(1) - &eps));
    assert_eq!(
        ex.mechanism.outcome(&[2, 1]),
        &empeq::game::Lottery::degenerate(o("c'"))
    );
    assert_eq!(ex.correspondence.admissible(&[0, 0]), [o("a"), o("b")]);
    assert_eq!(ex.correspondence.admissible(&[2, 1]), [o("d'")]);
    assert!(build_example5(int(1)).is_err());
}
