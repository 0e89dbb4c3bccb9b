//! Runs the four property checkers on every default mechanism and prints the
//! sign table, then the witness report for one instance.

use empeq::mechanisms::default_instances;
use empeq::scf::classify;

fn main() {
    println!("{:<14} SP EUDS NB ORP", "mechanism");
    let instances = default_instances();
    for (name, scf) in &instances {
        let signs = classify(scf).signs();
        let s: Vec<&str> = signs.iter().map(|&b| if b { "+" } else { "-" }).collect();
        println!(
            "{:<14} {:>2} {:>4} {:>2} {:>3}",
            name, s[0], s[1], s[2], s[3]
        );
    }

    let (name, scf) = &instances[0];
    println!("\n{name}:");
    print!("{}", classify(scf).render(scf));
}
