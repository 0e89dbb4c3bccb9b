//! A correspondence with no strategy-proof selection whose 4x2 mechanism still
//! lands inside it under iterated weak dominance.

use empeq::game::iterated_weak_dominance;
use empeq::mechanisms::build_example5;
use empeq::numeric::rat;

fn main() {
    let ex = build_example5(rat(1, 10)).expect("ε in (0, 1)");
    let selections = ex.correspondence.grid_selections(16).len();
    match ex.find_strategy_proof_selection(16) {
        Some(_) => println!("found a strategy-proof selection among {selections}"),
        None => println!("none of {selections} grid selections is strategy-proof"),
    }

    let survivors = iterated_weak_dominance(&ex.mechanism, &ex.utilities, &[3, 2]);
    for (i, types) in survivors.iter().enumerate() {
        for (t, msgs) in types.iter().enumerate() {
            let names: Vec<&str> = msgs
                .iter()
                .map(|&m| ex.mechanism.messages(i).name(m))
                .collect();
            println!(
                "agent {} type {}: {}",
                ex.agents.name(i),
                ex.types[i].name(t),
                names.join(" ")
            );
        }
    }
    for t1 in 0..3 {
        for t2 in 0..2 {
            let inside = survivors[0][t1].iter().all(|&m| {
                survivors[1][t2].iter().all(|&n| {
                    ex.correspondence
                        .contains(&[t1, t2], ex.mechanism.outcome(&[m, n]))
                })
            });
            println!(
                "({}, {}): surviving play inside F = {inside}",
                ex.types[0].name(t1),
                ex.types[1].name(t2)
            );
        }
    }
}
