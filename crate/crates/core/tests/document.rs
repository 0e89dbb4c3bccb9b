use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use empeq::document::{
    cmd_build, cmd_check_scf, cmd_classify_eq, cmd_qre_trace, parse_grid, parse_prior,
    parse_priorities, parse_profile, parse_schedule, BuildParams, DocumentError, GameDocument,
    PriorSpec, MECHANISM_NAMES,
};
use empeq::game::StrategyProfile;
use empeq::numeric::{int, rat};
use empeq::solvers::HomotopySchedule;

fn small_params(name: &str) -> BuildParams {
    let mut p = BuildParams::default();
    if name == "second-price" || name == "ttc" {
        p.n = Some(2);
    }
    p
}

fn auction_doc() -> GameDocument {
    let params = BuildParams {
        n: Some(2),
        prior: PriorSpec::Degenerate(vec!["M".into(), "H".into()]),
        ..BuildParams::default()
    };
    cmd_build("second-price", &params).unwrap()
}

fn ttc2_doc() -> GameDocument {
    let params = BuildParams {
        n: Some(2),
        prior: PriorSpec::Degenerate(vec!["hB>hA".into(), "hA>hB".into()]),
        ..BuildParams::default()
    };
    cmd_build("ttc", &params).unwrap()
}

#[test]
fn every_builder_round_trips() {
    for name in MECHANISM_NAMES {
        for prior in [PriorSpec::Uniform, PriorSpec::Random] {
            let params = BuildParams {
                prior,
                seed: 11,
                ..small_params(name)
            };
            let doc = cmd_build(name, &params).unwrap();
            let text = doc.to_json();
            let back = GameDocument::parse(&text).unwrap();
            assert_eq!(back, doc, "{name}");
            let game = back.to_game().unwrap();
            assert_eq!(GameDocument::from_game(&game), doc, "{name}");
            assert_eq!(GameDocument::from_game(&game).to_json(), text, "{name}");
        }
    }
}

#[test]
fn emitted_bytes_are_deterministic() {
    for name in MECHANISM_NAMES {
        let params = BuildParams {
            prior: PriorSpec::Random,
            seed: 5,
            ..small_params(name)
        };
        assert_eq!(
            cmd_build(name, &params).unwrap().to_json(),
            cmd_build(name, &params).unwrap().to_json()
        );
    }
    let a = BuildParams {
        prior: PriorSpec::Random,
        seed: 1,
        ..small_params("ttc")
    };
    let b = BuildParams {
        seed: 2,
        ..a.clone()
    };
    assert_ne!(cmd_build("ttc", &a).unwrap(), cmd_build("ttc", &b).unwrap());
}

#[test]
fn unknown_keys_and_bad_documents_are_rejected() {
    let text = auction_doc().to_json();
    let extra = text.replacen('{', "{\n  \"comment\": \"x\",", 1);
    assert!(matches!(
        GameDocument::parse(&extra),
        Err(DocumentError::Json(_))
    ));

    let mut doc = auction_doc();
    doc.mechanism.outcome_fn.remove("H,H");
    assert!(matches!(doc.to_game(), Err(DocumentError::Invalid(m)) if m.contains("undefined")));

    let mut doc = auction_doc();
    doc.prior.insert("M,L".into(), "1".into());
    assert!(doc.to_game().is_err(), "prior no longer sums to one");

    let mut doc = auction_doc();
    doc.utilities
        .get_mut("A")
        .unwrap()
        .get_mut("M")
        .unwrap()
        .insert("nowhere".into(), "0".into());
    assert!(doc.to_game().is_err());
}

#[test]
fn argument_parsers() {
    assert_eq!(
        parse_grid("0, 1/2,1").unwrap(),
        vec![int(0), rat(1, 2), int(1)]
    );
    assert!(parse_grid("0,x").is_err());
    assert_eq!(
        parse_prior("degenerate:M,H").unwrap(),
        PriorSpec::Degenerate(vec!["M".into(), "H".into()])
    );
    assert!(parse_prior("gaussian").is_err());
    assert_eq!(
        parse_priorities("ABC,bca").unwrap(),
        vec![vec![0, 1, 2], vec![1, 2, 0]]
    );
    let s = parse_schedule("0.5,2,30").unwrap();
    assert_eq!((s.lambda0, s.growth, s.max_steps), (0.5, 2.0, 30));
    assert_eq!(
        parse_schedule("0,2,30").unwrap().lambda0,
        HomotopySchedule::default().lambda0
    );
    assert!(parse_schedule("-1,2,30").is_err());
    assert!(parse_schedule("1,1,30").is_err());
    assert!(parse_schedule("1,2").is_err());
    assert!(cmd_build("vickrey", &BuildParams::default()).is_err());
}

#[test]
fn check_scf_reports_signs() {
    let out = cmd_check_scf(&cmd_build("ttc", &small_params("ttc")).unwrap()).unwrap();
    assert!(out.negative);
    let last = out.text.lines().last().unwrap();
    let summary: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(summary["signs"], "+ + + -");
    assert_eq!(summary["non_bossy"], true);

    let e5 = cmd_build("example5", &BuildParams::default()).unwrap();
    assert!(
        matches!(cmd_check_scf(&e5), Err(DocumentError::Invalid(m)) if m.contains("revelation"))
    );
}

#[test]
fn qre_trace_output_shape() {
    let out = cmd_qre_trace(&ttc2_doc(), &HomotopySchedule::default()).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    let header: Vec<&str> = lines[0].split(',').collect();
    assert_eq!(header[0], "lambda");
    assert_eq!(*header.last().unwrap(), "residual");
    let first: Vec<f64> = lines[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!(first[1..first.len() - 1].iter().all(|&p| p == 0.5));
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["steps"].as_u64().unwrap() as usize, lines.len() - 3);
    let trade = summary["outcomes"]["hB>hA,hA>hB"]["A:hB B:hA"]
        .as_f64()
        .unwrap();
    assert!(trade > 1.0 - 1e-6);

    let short = HomotopySchedule {
        max_steps: 2,
        ..HomotopySchedule::default()
    };
    match cmd_qre_trace(&ttc2_doc(), &short) {
        Err(DocumentError::Trace { partial, .. }) => assert_eq!(partial.lines().count(), 4),
        other => panic!("expected a partial trace, got {other:?}"),
    }
}

#[test]
fn classify_eq_on_the_suboptimal_auction_equilibrium() {
    let doc = auction_doc();
    let profile = r#"{"A": {"M": {"L": "1/2", "M": "1/2"}}, "B": {"H": {"H": "1"}}}"#;
    let out = cmd_classify_eq(&doc, profile, 1e-9, &HomotopySchedule::default()).unwrap();
    assert!(out.text.contains("bayesian-nash: yes"));
    assert!(out.text.contains("weakly-payoff-monotone: yes"));
    assert!(out.text.contains("dominant-support-test: passed"));
    assert!(out
        .text
        .contains("empirical-certificate: certified-approachable"));
    assert!(out.text.contains("truthful-equivalent: no (1 deviating"));
    assert!(out.negative);

    let hh = r#"{"A": {"M": {"H": "1"}}, "B": {"H": {"H": "1"}}}"#;
    let out = cmd_classify_eq(&doc, hh, 1e-9, &HomotopySchedule::default()).unwrap();
    assert!(out.text.contains("bayesian-nash: no"));
    assert!(out.text.contains("skipped"));
}

#[test]
fn profile_parsing() {
    let game = auction_doc().to_game().unwrap();
    let exact =
        parse_profile(&game, r#"{"A": {"M": {"M": "1"}}, "B": {"H": {"H": "1"}}}"#).unwrap();
    assert_eq!(exact.exact.unwrap(), StrategyProfile::truthful(&game));
    let float = parse_profile(
        &game,
        r#"{"A": {"M": {"L": 0.5, "M": 0.5}}, "B": {"H": {"H": 1}}}"#,
    )
    .unwrap();
    assert!(float.exact.is_none());
    assert_eq!(float.float.get(0, 1).unwrap(), &[0.5, 0.5, 0.0]);
    assert!(parse_profile(
        &game,
        r#"{"A": {"M": {"M": "1/2"}}, "B": {"H": {"H": "1"}}}"#
    )
    .is_err());
    assert!(
        parse_profile(&game, r#"{"A": {"M": {"M": "1"}}}"#).is_err(),
        "B's type is missing"
    );
    assert!(parse_profile(&game, r#"{"Z": {}}"#).is_err());
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("empeq-doc-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn empeq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_empeq"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn cli_exit_codes() {
    let dir = workdir("cli");
    let built = empeq(&[
        "build",
        "ttc",
        "--n",
        "2",
        "--prior",
        "degenerate:hB>hA,hA>hB",
    ]);
    assert_eq!(built.status.code(), Some(0));
    let game = dir.join("ttc2.json");
    fs::write(&game, &built.stdout).unwrap();
    let g = game.to_str().unwrap();

    assert_eq!(empeq(&["check-scf", g]).status.code(), Some(0));
    assert_eq!(empeq(&["check-scf", "--strict", g]).status.code(), Some(1));
    assert_eq!(empeq(&["build", "vickrey"]).status.code(), Some(2));
    assert_eq!(
        empeq(&["check-scf", dir.join("missing.json").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        empeq(&["qre-trace", "--schedule", "1,x,3", g])
            .status
            .code(),
        Some(2)
    );

    let trace = empeq(&["qre-trace", g]);
    assert_eq!(trace.status.code(), Some(0));
    let stdout = String::from_utf8(trace.stdout).unwrap();
    assert!(stdout
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0,0.5,0.5,0.5,0.5,"));

    let failed = empeq(&["qre-trace", "--schedule", "0.1,1.5,2", g]);
    assert_eq!(failed.status.code(), Some(1));
    assert_eq!(String::from_utf8(failed.stdout).unwrap().lines().count(), 4);

    let selfish = dir.join("selfish.json");
    fs::write(
        &selfish,
        r#"{"A": {"hB>hA": {"hA>hB": "1"}}, "B": {"hA>hB": {"hB>hA": "1"}}}"#,
    )
    .unwrap();
    let s = selfish.to_str().unwrap();
    let out = empeq(&["classify-eq", g, s]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("necessary-test-failed"));
    assert_eq!(
        empeq(&["classify-eq", "--strict", g, s]).status.code(),
        Some(1)
    );
    let _ = fs::remove_dir_all(dir);
}
