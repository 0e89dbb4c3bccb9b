use std::collections::BTreeMap;

use serde_json::Value;

use super::DocumentError;
use crate::game::{validate_profile, BayesianGame, StrategyProfile};
use crate::numeric::{format_rational, parse_rational, to_f64, Rational};

/// A strategy profile read from JSON `{agent: {type: {message: probability}}}`.
///
/// Probabilities are rational strings or JSON numbers; messages left out get
/// zero. The exact form is present only when every probability was a string.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedProfile {
    pub exact: Option<StrategyProfile<Rational>>,
    pub float: StrategyProfile<f64>,
}

enum Prob {
    Exact(Rational),
    Float(f64),
}

fn prob(v: &Value) -> Result<Prob, DocumentError> {
    match v {
        Value::String(s) => parse_rational(s)
            .map(Prob::Exact)
            .map_err(|e| DocumentError::Invalid(e.to_string())),
        Value::Number(n) => n
            .as_f64()
            .map(Prob::Float)
            .ok_or_else(|| DocumentError::Invalid(format!("bad number {n}"))),
        other => Err(DocumentError::Invalid(format!(
            "probability must be a string or number, got {other}"
        ))),
    }
}

pub fn parse_profile(game: &BayesianGame, text: &str) -> Result<ParsedProfile, DocumentError> {
    let root: BTreeMap<String, BTreeMap<String, BTreeMap<String, Value>>> =
        serde_json::from_str(text)?;
    let agents = game.mechanism().agents();
    if let Some(extra) = root.keys().find(|k| agents.index(k).is_none()) {
        return Err(DocumentError::Invalid(format!("unknown agent `{extra}`")));
    }
    let mut exact_ok = true;
    let mut exact: Vec<Vec<Option<Vec<Rational>>>> = Vec::new();
    let mut float: Vec<Vec<Option<Vec<f64>>>> = Vec::new();
    for i in 0..game.n_agents() {
        let types = game.types(i);
        let messages = game.mechanism().messages(i);
        let empty = BTreeMap::new();
        let per_type = root.get(agents.name(i)).unwrap_or(&empty);
        if let Some(extra) = per_type.keys().find(|k| types.index(k).is_none()) {
            return Err(DocumentError::Invalid(format!(
                "unknown type `{extra}` for `{}`",
                agents.name(i)
            )));
        }
        let mut erow = vec![None; types.len()];
        let mut frow = vec![None; types.len()];
        for (t, dist) in per_type {
            let t = types.require(t)?;
            let mut e = vec![Rational::from_integer(0.into()); messages.len()];
            let mut f = vec![0.0; messages.len()];
            for (m, v) in dist {
                let m = messages.require(m)?;
                match prob(v)? {
                    Prob::Exact(r) => {
                        f[m] = to_f64(&r);
                        e[m] = r;
                    }
                    Prob::Float(x) => {
                        exact_ok = false;
                        f[m] = x;
                    }
                }
            }
            erow[t] = Some(e);
            frow[t] = Some(f);
        }
        exact.push(erow);
        float.push(frow);
    }
    let float = StrategyProfile::new(float);
    let exact = exact_ok.then(|| StrategyProfile::new(exact));
    let violations = match &exact {
        Some(p) => validate_profile(game, p),
        None => validate_profile(game, &float),
    };
    if !violations.is_empty() {
        return Err(DocumentError::Invalid(
            violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    Ok(ParsedProfile { exact, float })
}

/// `{agent: {type: {message: probability}}}` over covered agent-types.
pub fn profile_to_json(game: &BayesianGame, profile: &StrategyProfile<f64>) -> Value {
    let mut root = serde_json::Map::new();
    for i in 0..game.n_agents() {
        let mut per_type = serde_json::Map::new();
        for t in 0..game.types(i).len() {
            if let Some(d) = profile.get(i, t) {
                let dist: serde_json::Map<String, Value> = d
                    .iter()
                    .enumerate()
                    .map(|(m, p)| {
                        (
                            game.mechanism().messages(i).name(m).to_string(),
                            Value::from(*p),
                        )
                    })
                    .collect();
                per_type.insert(game.types(i).name(t).to_string(), Value::Object(dist));
            }
        }
        root.insert(
            game.mechanism().agents().name(i).to_string(),
            Value::Object(per_type),
        );
    }
    Value::Object(root)
}

/// Exact profile with rational strings.
pub fn exact_profile_to_json(game: &BayesianGame, profile: &StrategyProfile<Rational>) -> Value {
    let mut root = serde_json::Map::new();
    for i in 0..game.n_agents() {
        let mut per_type = serde_json::Map::new();
        for t in 0..game.types(i).len() {
            if let Some(d) = profile.get(i, t) {
                let dist: serde_json::Map<String, Value> = d
                    .iter()
                    .enumerate()
                    .map(|(m, p)| {
                        (
                            game.mechanism().messages(i).name(m).to_string(),
                            Value::from(format_rational(p)),
                        )
                    })
                    .collect();
                per_type.insert(game.types(i).name(t).to_string(), Value::Object(dist));
            }
        }
        root.insert(
            game.mechanism().agents().name(i).to_string(),
            Value::Object(per_type),
        );
    }
    Value::Object(root)
}
