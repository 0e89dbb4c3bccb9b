use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::profile::{parse_profile, profile_to_json};
use super::{DocumentError, GameDocument};
use crate::game::{BayesianGame, Labels, Prior, StrategyProfile};
use crate::mechanisms::{
    build_example1, build_example5, build_median_voting, build_pivotal, build_second_price,
    build_spda, build_ttc, build_uniform_rule, AuctionSpec, ExchangeSpec, MedianSpec, PivotalSpec,
    SchoolChoiceSpec, UniformSpec,
};
use crate::numeric::{int, parse_rational, rat, to_f64, Rational};
use crate::scf::{classify, Scf};
use crate::solvers::{
    certify_empirical, classify_revelation_equilibrium, is_weakly_payoff_monotone,
    lemma1_support_test, nash_gap, trace_limiting_logistic, CertificateVerdict, HomotopySchedule,
    SolverError, TOL_P,
};

/// Builder names accepted by [`cmd_build`].
pub const MECHANISM_NAMES: [&str; 8] = [
    "second-price",
    "ttc",
    "pivotal",
    "spda",
    "uniform",
    "median",
    "example1",
    "example5",
];

/// Prior attached to a built game.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum PriorSpec {
    #[default]
    Uniform,
    /// Type ids in agent order.
    Degenerate(Vec<String>),
    /// Full support with integer weights 1..=20, seeded.
    Random,
}

/// Optional builder parameters; unset fields take the builder's default instance.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BuildParams {
    pub n: Option<usize>,
    pub grid: Option<Vec<Rational>>,
    pub amount: Option<Rational>,
    pub cost: Option<Rational>,
    pub k: Option<usize>,
    pub eps: Option<Rational>,
    /// School priorities, one student order per school.
    pub priorities: Option<Vec<Vec<usize>>>,
    pub prior: PriorSpec,
    pub seed: u64,
}

/// `"0,1/2,1"`.
pub fn parse_grid(text: &str) -> Result<Vec<Rational>, DocumentError> {
    text.split(',')
        .map(|s| parse_rational(s).map_err(|e| DocumentError::Invalid(e.to_string())))
        .collect()
}

/// `uniform`, `random` or `degenerate:M,H`.
pub fn parse_prior(text: &str) -> Result<PriorSpec, DocumentError> {
    match text {
        "uniform" => Ok(PriorSpec::Uniform),
        "random" => Ok(PriorSpec::Random),
        _ => match text.strip_prefix("degenerate:") {
            Some(rest) => Ok(PriorSpec::Degenerate(
                rest.split(',').map(|s| s.trim().to_string()).collect(),
            )),
            None => Err(DocumentError::Invalid(format!("unknown prior `{text}`"))),
        },
    }
}

/// `"λ0,ρ,steps"`. A zero `λ0` keeps the default starting point; the trace
/// always begins with the uniform profile at `λ = 0`.
pub fn parse_schedule(text: &str) -> Result<HomotopySchedule, DocumentError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || DocumentError::Invalid(format!("schedule `{text}` is not λ0,ρ,steps"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lambda0: f64 = parts[0].parse().map_err(|_| bad())?;
    let growth: f64 = parts[1].parse().map_err(|_| bad())?;
    let max_steps: usize = parts[2].parse().map_err(|_| bad())?;
    let mut s = HomotopySchedule {
        growth,
        max_steps,
        ..HomotopySchedule::default()
    };
    if lambda0 > 0.0 {
        s.lambda0 = lambda0;
    } else if lambda0 < 0.0 {
        return Err(bad());
    }
    s.validate()
        .map_err(|e| DocumentError::Invalid(e.to_string()))?;
    Ok(s)
}

/// `"ABC,ABC,BCA"`: for each school, students from highest priority down.
pub fn parse_priorities(text: &str) -> Result<Vec<Vec<usize>>, DocumentError> {
    text.split(',')
        .map(|school| {
            school
                .trim()
                .chars()
                .map(|c| {
                    let c = c.to_ascii_uppercase();
                    if c.is_ascii_uppercase() {
                        Ok((c as u8 - b'A') as usize)
                    } else {
                        Err(DocumentError::Invalid(format!(
                            "bad student `{c}` in priorities"
                        )))
                    }
                })
                .collect()
        })
        .collect()
}

fn make_prior(types: &[Labels], spec: &PriorSpec, seed: u64) -> Result<Prior, DocumentError> {
    let sizes: Vec<usize> = types.iter().map(Labels::len).collect();
    match spec {
        PriorSpec::Uniform => Ok(Prior::uniform(sizes)),
        PriorSpec::Degenerate(ids) => {
            if ids.len() != types.len() {
                return Err(DocumentError::Invalid(
                    "degenerate prior needs one type per agent".into(),
                ));
            }
            let coords = ids
                .iter()
                .zip(types)
                .map(|(id, ts)| ts.require(id))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Prior::degenerate(sizes, &coords)?)
        }
        PriorSpec::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let len: usize = sizes.iter().product();
            let raw: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=20)).collect();
            let total: i64 = raw.iter().sum();
            Ok(Prior::new(
                sizes,
                raw.into_iter().map(|w| rat(w, total)).collect(),
            )?)
        }
    }
}

fn scf_game(scf: &Scf, params: &BuildParams) -> Result<BayesianGame, DocumentError> {
    let prior = make_prior(scf.type_spaces(), &params.prior, params.seed)?;
    Ok(scf.direct_revelation_game(prior)?)
}

/// Builds a named mechanism and returns its game document.
pub fn cmd_build(name: &str, params: &BuildParams) -> Result<GameDocument, DocumentError> {
    let half_grid = || vec![int(0), rat(1, 2), int(1)];
    let game = match name {
        "second-price" => {
            let spec = AuctionSpec::new(
                params.n.unwrap_or(3),
                params.grid.clone().unwrap_or_else(half_grid),
            );
            scf_game(&build_second_price(&spec)?, params)?
        }
        "ttc" => scf_game(
            &build_ttc(&ExchangeSpec::new(params.n.unwrap_or(3)))?,
            params,
        )?,
        "pivotal" => {
            let d = PivotalSpec::default_instance();
            let spec = PivotalSpec::new(
                params.n.unwrap_or(d.agents),
                params.grid.clone().unwrap_or(d.grid),
                params.cost.clone().unwrap_or(d.cost),
            );
            scf_game(&build_pivotal(&spec)?, params)?
        }
        "spda" => {
            let d = SchoolChoiceSpec::default_instance();
            let priorities = params.priorities.clone().unwrap_or(d.priorities);
            let students = params
                .n
                .unwrap_or_else(|| priorities.first().map_or(d.students, Vec::len));
            let spec = SchoolChoiceSpec::new(students, vec![1; priorities.len()], priorities);
            scf_game(&build_spda(&spec)?, params)?
        }
        "uniform" => {
            let d = UniformSpec::default_instance();
            let spec = UniformSpec::new(
                params.n.unwrap_or(d.agents),
                params.amount.clone().unwrap_or(d.amount),
                params.grid.clone().unwrap_or(d.grid),
            );
            scf_game(&build_uniform_rule(&spec)?, params)?
        }
        "median" => {
            let d = MedianSpec::default_instance();
            let spec = MedianSpec::new(
                params.n.unwrap_or(d.voters),
                params.grid.clone().unwrap_or(d.grid),
            );
            scf_game(&build_median_voting(&spec)?, params)?
        }
        "example1" => {
            let ex = build_example1(params.k.unwrap_or(1))?;
            let prior = make_prior(ex.scf.type_spaces(), &params.prior, params.seed)?;
            ex.enlarged_game(prior)?
        }
        "example5" => {
            let ex = build_example5(params.eps.clone().unwrap_or_else(|| rat(1, 10)))?;
            let prior = make_prior(&ex.types, &params.prior, params.seed)?;
            ex.game(prior)?
        }
        other => {
            return Err(DocumentError::Invalid(format!(
                "unknown mechanism `{other}` (expected one of {})",
                MECHANISM_NAMES.join(", ")
            )))
        }
    };
    Ok(GameDocument::from_game(&game))
}

/// The scf of a revelation-form game (message spaces equal type spaces).
pub fn revelation_scf(game: &BayesianGame) -> Result<Scf, DocumentError> {
    let mech = game.mechanism();
    for i in 0..game.n_agents() {
        if mech.messages(i).names() != game.types(i).names() {
            return Err(DocumentError::Invalid(format!(
                "agent `{}`: messages differ from types; not a revelation mechanism",
                mech.agents().name(i)
            )));
        }
    }
    Ok(Scf::new(
        mech.agents().clone(),
        game.type_spaces().to_vec(),
        mech.outcomes().clone(),
        mech.outcome_fn().to_vec(),
        game.utilities().clone(),
    )?)
}

/// Text report plus whether any verdict was negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub negative: bool,
}

/// Runs the four property checkers on a revelation-form document.
pub fn cmd_check_scf(doc: &GameDocument) -> Result<CommandOutput, DocumentError> {
    let game = doc.to_game()?;
    let scf = revelation_scf(&game)?;
    let report = classify(&scf);
    let mut text = report.render(&scf);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let signs = report.signs();
    let summary = json!({
        "strategy_proof": signs[0],
        "essentially_unique_dominant": signs[1],
        "non_bossy": signs[2],
        "outcome_rectangular": signs[3],
        "signs": report.sign_string(),
    });
    text.push_str(&summary.to_string());
    text.push('\n');
    Ok(CommandOutput {
        text,
        negative: !report.signs().iter().all(|&b| b),
    })
}

fn csv_header(game: &BayesianGame, profile: &StrategyProfile<f64>) -> String {
    let mut cols = vec!["lambda".to_string()];
    for (i, t, d) in profile.entries() {
        for m in 0..d.len() {
            cols.push(format!(
                "{}:{}:{}",
                game.mechanism().agents().name(i),
                game.types(i).name(t),
                game.mechanism().messages(i).name(m)
            ));
        }
    }
    cols.push("residual".into());
    cols.join(",")
}

fn csv_row(lambda: f64, profile: &StrategyProfile<f64>, residual: f64) -> String {
    let mut cols = vec![lambda.to_string()];
    for (_, _, d) in profile.entries() {
        cols.extend(d.iter().map(f64::to_string));
    }
    cols.push(residual.to_string());
    cols.join(",")
}

/// Outcome distribution induced by `profile` at each type profile in the prior's support.
pub fn induced_outcomes(game: &BayesianGame, profile: &StrategyProfile<f64>) -> Value {
    let mech = game.mechanism();
    let types = game.prior().space();
    let mut out = serde_json::Map::new();
    for k in game.prior().support() {
        let theta = types.coords(k);
        let mut dist = vec![0.0; mech.outcomes().len()];
        for r in 0..mech.space().len() {
            let m = mech.space().coords(r);
            let p: f64 = m
                .iter()
                .enumerate()
                .map(|(i, &mi)| profile.get(i, theta[i]).map_or(0.0, |d| d[mi]))
                .product();
            if p == 0.0 {
                continue;
            }
            for (o, w) in mech.outcome_at(r).entries() {
                dist[*o] += p * to_f64(w);
            }
        }
        let key = theta
            .iter()
            .enumerate()
            .map(|(i, &t)| game.types(i).name(t))
            .collect::<Vec<_>>()
            .join(",");
        let entries: serde_json::Map<String, Value> = dist
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .map(|(o, p)| (mech.outcomes().name(o).to_string(), Value::from(*p)))
            .collect();
        out.insert(key, Value::Object(entries));
    }
    Value::Object(out)
}

/// CSV of the logistic path (one row per λ) followed by one JSON line with the limit.
///
/// On failure the error carries the CSV rows computed so far.
pub fn cmd_qre_trace(
    doc: &GameDocument,
    schedule: &HomotopySchedule,
) -> Result<String, DocumentError> {
    let game = doc.to_game()?;
    let render = |points: &[crate::solvers::TracePoint]| {
        let mut csv = String::new();
        if let Some(first) = points.first() {
            let _ = writeln!(csv, "{}", csv_header(&game, &first.profile));
        }
        for p in points {
            let _ = writeln!(csv, "{}", csv_row(p.lambda, &p.profile, p.residual));
        }
        csv
    };
    match trace_limiting_logistic(&game, schedule) {
        Ok(trace) => {
            let mut out = render(&trace.points);
            let branch_events = trace.points.iter().filter(|p| p.branch_event).count();
            let summary = json!({
                "limit": profile_to_json(&game, &trace.limit),
                "nash_gap": trace.nash_gap,
                "epsilon": trace.epsilon,
                "steps": trace.points.len() - 1,
                "branch_events": branch_events,
                "outcomes": induced_outcomes(&game, &trace.limit),
            });
            out.push_str(&summary.to_string());
            out.push('\n');
            Ok(out)
        }
        Err(SolverError::TraceFailed {
            lambda,
            partial,
            source,
        }) => Err(DocumentError::Trace {
            partial: render(&partial),
            message: format!("trace failed at λ={lambda}: {source}"),
        }),
        Err(e) => Err(e.into()),
    }
}

/// Equilibrium analysis of a profile file against a game document.
pub fn cmd_classify_eq(
    doc: &GameDocument,
    profile_text: &str,
    tol: f64,
    schedule: &HomotopySchedule,
) -> Result<CommandOutput, DocumentError> {
    let game = doc.to_game()?;
    let parsed = parse_profile(&game, profile_text)?;
    let mut text = String::new();
    let mut negative = false;
    let zero = Rational::from_integer(0.into());

    let (is_nash, gap) = match &parsed.exact {
        Some(p) => {
            let g = nash_gap(&game, p)?;
            (g <= zero, to_f64(&g))
        }
        None => {
            let g = nash_gap(&game, &parsed.float)?;
            (g <= tol, g)
        }
    };
    let mode = if parsed.exact.is_some() {
        "exact"
    } else {
        "float"
    };
    let _ = writeln!(
        text,
        "bayesian-nash: {} (gap {gap:e}, {mode})",
        if is_nash { "yes" } else { "no" }
    );

    let monotone = match &parsed.exact {
        Some(p) => is_weakly_payoff_monotone(&game, p, zero.clone(), zero.clone())?,
        None => is_weakly_payoff_monotone(&game, &parsed.float, TOL_P, tol)?,
    };
    let _ = writeln!(
        text,
        "weakly-payoff-monotone: {}",
        if monotone.verdict {
            "yes".to_string()
        } else {
            format!("no ({} violating pairs)", monotone.violations.len())
        }
    );
    if !is_nash {
        let _ = writeln!(
            text,
            "remaining checks skipped: profile is not an equilibrium"
        );
        return Ok(CommandOutput {
            text,
            negative: true,
        });
    }

    let support = match &parsed.exact {
        Some(p) => lemma1_support_test(&game, p, zero.clone(), zero.clone())?,
        None => lemma1_support_test(&game, &parsed.float, tol, 0.0)?,
    };
    if support.passed {
        let _ = writeln!(text, "dominant-support-test: passed");
    } else {
        negative = true;
        let missing: Vec<String> = support
            .missing
            .iter()
            .map(|&(i, t, m)| {
                format!(
                    "{}/{} omits {}",
                    game.mechanism().agents().name(i),
                    game.types(i).name(t),
                    game.mechanism().messages(i).name(m)
                )
            })
            .collect();
        let _ = writeln!(
            text,
            "dominant-support-test: failed ({})",
            missing.join("; ")
        );
    }

    let cert = certify_empirical(&game, &parsed.float, schedule);
    match cert {
        Ok(c) => {
            let verdict = match c.verdict {
                CertificateVerdict::NecessaryTestFailed => "necessary-test-failed",
                CertificateVerdict::CertifiedApproachable => "certified-approachable",
                CertificateVerdict::Inconclusive => "inconclusive",
            };
            negative |= c.verdict != CertificateVerdict::CertifiedApproachable;
            let _ = writeln!(
                text,
                "empirical-certificate: {verdict} ({} monotone steps, final distance {})",
                c.sequence.len(),
                c.final_distance()
                    .map_or("n/a".to_string(), |d| format!("{d:e}"))
            );
        }
        Err(e) => {
            negative = true;
            let _ = writeln!(text, "empirical-certificate: error ({e})");
        }
    }

    match revelation_scf(&game) {
        Ok(scf) => {
            let report = match &parsed.exact {
                Some(p) => {
                    classify_revelation_equilibrium(&scf, game.prior(), p, zero.clone(), zero)?
                }
                None => {
                    classify_revelation_equilibrium(&scf, game.prior(), &parsed.float, tol, tol)?
                }
            };
            if report.truthful_equivalent {
                let _ = writeln!(text, "truthful-equivalent: yes");
            } else {
                negative = true;
                let _ = writeln!(
                    text,
                    "truthful-equivalent: no ({} deviating report profiles)",
                    report.deviations.len()
                );
                for d in &report.deviations {
                    let _ = writeln!(
                        text,
                        "  θ=({}) τ=({}) p={} g(τ)={} g(θ)={}",
                        scf.profile_label(&d.truth),
                        scf.profile_label(&d.report),
                        d.probability,
                        scf.lottery_label(scf.outcome(&d.report)),
                        scf.lottery_label(scf.outcome(&d.truth)),
                    );
                }
            }
        }
        Err(_) => {
            let _ = writeln!(
                text,
                "truthful-equivalent: n/a (not a revelation mechanism)"
            );
        }
    }
    Ok(CommandOutput { text, negative })
}
