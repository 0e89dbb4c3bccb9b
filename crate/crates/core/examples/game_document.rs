//! Emits a game as JSON, reads it back and checks the round trip.

use empeq::document::{cmd_build, BuildParams, GameDocument, PriorSpec};

fn main() {
    let params = BuildParams {
        prior: PriorSpec::Degenerate(vec!["1".into(), "-1".into()]),
        n: Some(2),
        ..BuildParams::default()
    };
    let doc = cmd_build("pivotal", &params).expect("pivotal");
    let text = doc.to_json();
    let back = GameDocument::parse(&text).expect("parse");
    let game = back.to_game().expect("valid game");
    println!("{} bytes, round trip exact: {}", text.len(), back == doc);
    println!(
        "{} agents, {} outcomes, prior support {}",
        game.n_agents(),
        game.mechanism().outcomes().len(),
        game.prior().support().count()
    );
}
