use crate::game::BayesianGame;

use super::SolverError;

/// `l^λ(x)_m = e^{λ x_m} / Σ_t e^{λ x_t}`, evaluated with max-subtraction.
pub fn logistic_response(lambda: f64, payoffs: &[f64]) -> Vec<f64> {
    let max = payoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = payoffs.iter().map(|x| (lambda * (x - max)).exp()).collect();
    let total: f64 = out.iter().sum();
    for v in &mut out {
        *v /= total;
    }
    out
}

/// `κ^{ε,λ}(x) = ε/n + (1-ε) l^λ(x)`.
pub fn kappa_response(eps: f64, lambda: f64, payoffs: &[f64]) -> Vec<f64> {
    let floor = eps / payoffs.len() as f64;
    logistic_response(lambda, payoffs)
        .into_iter()
        .map(|p| floor + (1.0 - eps) * p)
        .collect()
}

/// Logistic response tilted toward `anchor`: `ε/n + (1-ε) softmax(λx + ln w)`,
/// where messages with zero anchor weight get no logistic mass.
pub fn anchored_response(eps: f64, lambda: f64, anchor: &[f64], payoffs: &[f64]) -> Vec<f64> {
    let n = payoffs.len() as f64;
    let scores: Vec<f64> = payoffs
        .iter()
        .zip(anchor)
        .map(|(x, w)| {
            if *w > 0.0 {
                lambda * x + w.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scores
        .iter()
        .map(|s| if s.is_finite() { (s - max).exp() } else { 0.0 })
        .collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter()
        .map(|e| eps / n + (1.0 - eps) * e / total)
        .collect()
}

/// A noisy best response family for one agent-type.
#[derive(Clone, Debug, PartialEq)]
pub enum ResponseKind {
    Logistic {
        lambda: f64,
    },
    Kappa {
        eps: f64,
        lambda: f64,
    },
    /// Reaches non-uniform mixtures. Not monotone in general, so profiles built
    /// with it are checked for weak payoff monotonicity before use.
    Anchored {
        eps: f64,
        lambda: f64,
        anchor: Vec<f64>,
    },
}

impl ResponseKind {
    pub fn respond(&self, payoffs: &[f64]) -> Vec<f64> {
        match self {
            Self::Logistic { lambda } => logistic_response(*lambda, payoffs),
            Self::Kappa { eps, lambda } => kappa_response(*eps, *lambda, payoffs),
            Self::Anchored {
                eps,
                lambda,
                anchor,
            } => anchored_response(*eps, *lambda, anchor, payoffs),
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: &str| Err(SolverError::InvalidParams(m.to_string()));
        match self {
            Self::Logistic { lambda } if !(lambda.is_finite() && *lambda >= 0.0) => {
                bad("λ must be finite and ≥ 0")
            }
            Self::Kappa { eps, lambda } | Self::Anchored { eps, lambda, .. }
                if !(lambda.is_finite() && *lambda >= 0.0) || !(*eps > 0.0 && *eps < 1.0) =>
            {
                bad("κ needs 0 < ε < 1 and finite λ ≥ 0")
            }
            Self::Anchored { anchor, .. } if anchor.iter().all(|w| *w <= 0.0) => {
                bad("anchor needs positive weight")
            }
            _ => Ok(()),
        }
    }
}

/// Response kind for every supported agent-type.
#[derive(Clone, Debug, PartialEq)]
pub struct ResponseParams {
    kinds: Vec<Vec<Option<ResponseKind>>>,
}

impl ResponseParams {
    pub fn from_fn(game: &BayesianGame, mut f: impl FnMut(usize, usize) -> ResponseKind) -> Self {
        let kinds = (0..game.n_agents())
            .map(|i| {
                (0..game.types(i).len())
                    .map(|t| game.is_supported(i, t).then(|| f(i, t)))
                    .collect()
            })
            .collect();
        Self { kinds }
    }

    pub fn logistic(game: &BayesianGame, lambda: f64) -> Self {
        Self::from_fn(game, |_, _| ResponseKind::Logistic { lambda })
    }

    pub fn kappa(game: &BayesianGame, eps: f64, lambda: f64) -> Self {
        Self::from_fn(game, |_, _| ResponseKind::Kappa { eps, lambda })
    }

    /// Every precision `λ` multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let kinds = self
            .kinds
            .iter()
            .map(|ts| {
                ts.iter()
                    .map(|k| {
                        k.as_ref().map(|k| match k {
                            ResponseKind::Logistic { lambda } => {
                                ResponseKind::Logistic { lambda: lambda * s }
                            }
                            ResponseKind::Kappa { eps, lambda } => ResponseKind::Kappa {
                                eps: *eps,
                                lambda: lambda * s,
                            },
                            ResponseKind::Anchored {
                                eps,
                                lambda,
                                anchor,
                            } => ResponseKind::Anchored {
                                eps: *eps,
                                lambda: lambda * s,
                                anchor: anchor.clone(),
                            },
                        })
                    })
                    .collect()
            })
            .collect();
        Self { kinds }
    }

    pub fn get(&self, agent: usize, ty: usize) -> Option<&ResponseKind> {
        self.kinds
            .get(agent)
            .and_then(|a| a.get(ty))
            .and_then(Option::as_ref)
    }

    pub fn validate(&self, game: &BayesianGame) -> Result<(), SolverError> {
        for i in 0..game.n_agents() {
            for t in game.supported_types(i) {
                let kind = self.get(i, t).ok_or_else(|| {
                    SolverError::InvalidParams(format!("no response for agent {i} type {t}"))
                })?;
                kind.validate()?;
                if let ResponseKind::Anchored { anchor, .. } = kind {
                    if anchor.len() != game.mechanism().messages(i).len() {
                        return Err(SolverError::InvalidParams("anchor length".into()));
                    }
                }
            }
        }
        Ok(())
    }
}
