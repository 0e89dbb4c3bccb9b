use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::DocumentError;
use crate::game::{BayesianGame, Labels, Lottery, Mechanism, Prior, ProductSpace, UtilityTable};
use crate::numeric::{format_rational, parse_rational, Rational};

/// Outcome function as a map from profile key to `{outcome: probability}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismDocument {
    pub message_spaces: BTreeMap<String, Vec<String>>,
    pub outcome_fn: BTreeMap<String, BTreeMap<String, String>>,
}

/// JSON form of a [`BayesianGame`].
///
/// Profiles are keyed by their ids joined with commas in agent order; rationals
/// are `"p/q"` or integer strings. Prior profiles left out have weight zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub agents: Vec<String>,
    pub outcomes: Vec<String>,
    pub type_spaces: BTreeMap<String, Vec<String>>,
    pub utilities: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
    pub prior: BTreeMap<String, String>,
    pub mechanism: MechanismDocument,
}

fn profile_key(spaces: &[Labels], coords: &[usize]) -> String {
    coords
        .iter()
        .enumerate()
        .map(|(i, &c)| spaces[i].name(c))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_profile_key(spaces: &[Labels], key: &str) -> Result<Vec<usize>, DocumentError> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != spaces.len() {
        return Err(DocumentError::Invalid(format!(
            "profile `{key}` has {} entries",
            parts.len()
        )));
    }
    parts
        .iter()
        .zip(spaces)
        .map(|(p, s)| {
            s.index(p.trim()).ok_or_else(|| {
                DocumentError::Invalid(format!("unknown id `{p}` in profile `{key}`"))
            })
        })
        .collect()
}

fn rational(text: &str) -> Result<Rational, DocumentError> {
    parse_rational(text).map_err(|e| DocumentError::Invalid(e.to_string()))
}

fn spaces_for(
    agents: &Labels,
    map: &BTreeMap<String, Vec<String>>,
    what: &str,
) -> Result<Vec<Labels>, DocumentError> {
    if let Some(extra) = map.keys().find(|k| agents.index(k).is_none()) {
        return Err(DocumentError::Invalid(format!(
            "{what} for unknown agent `{extra}`"
        )));
    }
    agents
        .names()
        .iter()
        .map(|a| {
            let ids = map
                .get(a)
                .ok_or_else(|| DocumentError::Invalid(format!("no {what} for agent `{a}`")))?;
            if let Some(bad) = ids.iter().find(|id| id.contains(',')) {
                return Err(DocumentError::Invalid(format!(
                    "id `{bad}` contains a comma"
                )));
            }
            Ok(Labels::new(ids.iter().cloned())?)
        })
        .collect()
}

impl GameDocument {
    pub fn from_game(game: &BayesianGame) -> Self {
        let mech = game.mechanism();
        let agents = mech.agents();
        let outcomes = mech.outcomes();
        let types = game.type_spaces();
        let type_spaces = (0..agents.len())
            .map(|i| (agents.name(i).to_string(), types[i].names().to_vec()))
            .collect();
        let utilities = (0..agents.len())
            .map(|i| {
                let per_type = (0..types[i].len())
                    .map(|t| {
                        let row = (0..outcomes.len())
                            .map(|o| {
                                (
                                    outcomes.name(o).to_string(),
                                    format_rational(game.utilities().get(i, t, o)),
                                )
                            })
                            .collect();
                        (types[i].name(t).to_string(), row)
                    })
                    .collect();
                (agents.name(i).to_string(), per_type)
            })
            .collect();
        let prior_space = game.prior().space();
        let prior = game
            .prior()
            .support()
            .map(|k| {
                (
                    profile_key(types, &prior_space.coords(k)),
                    format_rational(&game.prior().weights()[k]),
                )
            })
            .collect();
        let message_spaces = (0..agents.len())
            .map(|i| {
                (
                    agents.name(i).to_string(),
                    mech.messages(i).names().to_vec(),
                )
            })
            .collect();
        let outcome_fn = (0..mech.space().len())
            .map(|k| {
                let lottery = mech
                    .outcome_at(k)
                    .entries()
                    .iter()
                    .map(|(o, w)| (outcomes.name(*o).to_string(), format_rational(w)))
                    .collect();
                (
                    profile_key(mech.message_spaces(), &mech.space().coords(k)),
                    lottery,
                )
            })
            .collect();
        Self {
            agents: agents.names().to_vec(),
            outcomes: outcomes.names().to_vec(),
            type_spaces,
            utilities,
            prior,
            mechanism: MechanismDocument {
                message_spaces,
                outcome_fn,
            },
        }
    }

    pub fn to_game(&self) -> Result<BayesianGame, DocumentError> {
        let agents = Labels::new(self.agents.iter().cloned())?;
        let outcomes = Labels::new(self.outcomes.iter().cloned())?;
        let types = spaces_for(&agents, &self.type_spaces, "type space")?;
        let messages = spaces_for(&agents, &self.mechanism.message_spaces, "message space")?;

        if let Some(extra) = self.utilities.keys().find(|k| agents.index(k).is_none()) {
            return Err(DocumentError::Invalid(format!(
                "utilities for unknown agent `{extra}`"
            )));
        }
        let mut table = Vec::with_capacity(agents.len());
        for (i, a) in agents.names().iter().enumerate() {
            let per_type = self
                .utilities
                .get(a)
                .ok_or_else(|| DocumentError::Invalid(format!("no utilities for agent `{a}`")))?;
            if let Some(extra) = per_type.keys().find(|k| types[i].index(k).is_none()) {
                return Err(DocumentError::Invalid(format!(
                    "utilities for unknown type `{extra}` of `{a}`"
                )));
            }
            let mut rows = Vec::with_capacity(types[i].len());
            for t in types[i].names() {
                let row = per_type.get(t).ok_or_else(|| {
                    DocumentError::Invalid(format!("no utilities for `{a}` type `{t}`"))
                })?;
                if let Some(extra) = row.keys().find(|k| outcomes.index(k).is_none()) {
                    return Err(DocumentError::Invalid(format!(
                        "utility for unknown outcome `{extra}`"
                    )));
                }
                let values = outcomes
                    .names()
                    .iter()
                    .map(|o| {
                        row.get(o)
                            .ok_or_else(|| {
                                DocumentError::Invalid(format!(
                                    "no utility for `{a}` type `{t}` outcome `{o}`"
                                ))
                            })
                            .and_then(|v| rational(v))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(values);
            }
            table.push(rows);
        }
        let utilities = UtilityTable::new(table);

        let sizes: Vec<usize> = types.iter().map(Labels::len).collect();
        let type_space = ProductSpace::new(sizes.clone());
        let mut weights = vec![Rational::from_integer(0.into()); type_space.len()];
        for (key, w) in &self.prior {
            let coords = parse_profile_key(&types, key)?;
            weights[type_space.index(&coords)] = rational(w)?;
        }
        let prior = Prior::new(sizes, weights)?;

        let message_space = ProductSpace::new(messages.iter().map(Labels::len).collect());
        let mut slots: Vec<Option<Lottery>> = vec![None; message_space.len()];
        for (key, lottery) in &self.mechanism.outcome_fn {
            let coords = parse_profile_key(&messages, key)?;
            let entries = lottery
                .iter()
                .map(|(o, w)| {
                    let idx = outcomes
                        .index(o)
                        .ok_or_else(|| DocumentError::Invalid(format!("unknown outcome `{o}`")))?;
                    Ok((idx, rational(w)?))
                })
                .collect::<Result<Vec<_>, DocumentError>>()?;
            slots[message_space.index(&coords)] = Some(Lottery::new(entries)?);
        }
        let outcome_fn = slots
            .into_iter()
            .enumerate()
            .map(|(k, l)| {
                l.ok_or_else(|| {
                    DocumentError::Invalid(format!(
                        "outcome function undefined at `{}`",
                        profile_key(&messages, &message_space.coords(k))
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mechanism = Mechanism::new(agents, messages, outcomes, outcome_fn)?;
        Ok(BayesianGame::new(mechanism, types, prior, utilities)?)
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty-printed JSON with sorted map keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}
