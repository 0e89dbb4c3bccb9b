use nalgebra::{DMatrix, DVector};

use crate::game::{validate_profile, BayesianGame, PayoffModel, StrategyProfile};

use super::{ResponseParams, SolverError};

/// Damped iteration settings.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointConfig {
    /// Initial damping `d` in `σ ← (1-d)σ + d Q(U(σ))`.
    pub damping: f64,
    pub residual_tol: f64,
    pub max_iterations: usize,
    /// Grow `d` while the residual falls, halve it when the residual rises.
    pub adaptive: bool,
    /// Newton steps tried from the best iterate when damped iteration stalls.
    /// Fixed points that repel the iteration are still reached this way.
    pub newton_iterations: usize,
}

impl Default for FixedPointConfig {
    fn default() -> Self {
        Self {
            damping: 0.5,
            residual_tol: 1e-10,
            max_iterations: 100_000,
            adaptive: true,
            newton_iterations: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QreSolution {
    pub profile: StrategyProfile<f64>,
    /// Max-norm of `Q(U(σ)) - σ`.
    pub residual: f64,
    pub iterations: usize,
}

/// `Q(U(σ))` for every supported agent-type.
pub(crate) fn respond(
    model: &PayoffModel<f64>,
    params: &ResponseParams,
    profile: &StrategyProfile<f64>,
) -> Result<StrategyProfile<f64>, SolverError> {
    let payoffs = model.all_payoffs(profile)?;
    let dists = payoffs
        .dists()
        .iter()
        .enumerate()
        .map(|(i, ts)| {
            ts.iter()
                .enumerate()
                .map(|(t, u)| {
                    u.as_ref().map(|u| {
                        params
                            .get(i, t)
                            .expect("params validated against the game")
                            .respond(u)
                    })
                })
                .collect()
        })
        .collect();
    Ok(StrategyProfile::new(dists))
}

fn residual(a: &StrategyProfile<f64>, b: &StrategyProfile<f64>) -> f64 {
    a.distance(b)
}

/// Fixed point of `Q ∘ U` by damped iteration from `init` (uniform when `None`).
pub fn qre_fixed_point(
    game: &BayesianGame,
    params: &ResponseParams,
    init: Option<&StrategyProfile<f64>>,
    config: &FixedPointConfig,
) -> Result<QreSolution, SolverError> {
    params.validate(game)?;
    let model = PayoffModel::new(game);
    let start = match init {
        Some(p) => {
            let v = validate_profile(game, p);
            if !v.is_empty() {
                return Err(SolverError::InvalidProfile(
                    v.iter().map(ToString::to_string).collect(),
                ));
            }
            p.clone()
        }
        None => StrategyProfile::uniform(game),
    };
    match solve_with(&model, params, start, config) {
        Err(SolverError::NonConvergence { residual, best }) => {
            log::debug!("direct solve failed at residual {residual:e}; continuing from λ = 0");
            continuation(&model, params, StrategyProfile::uniform(game), config)
                .ok_or(SolverError::NonConvergence { residual, best })
        }
        other => other,
    }
}

/// Follows the fixed point of `params.scaled(s)` from `s = 0`, where responses
/// ignore payoffs, up to `s = 1`, halving the step after each failure.
fn continuation(
    model: &PayoffModel<f64>,
    params: &ResponseParams,
    uniform: StrategyProfile<f64>,
    config: &FixedPointConfig,
) -> Option<QreSolution> {
    let (mut s, mut step) = (0.0f64, 0.05f64);
    let mut current = solve_with(model, &params.scaled(0.0), uniform, config).ok()?;
    let mut iterations = current.iterations;
    while s < 1.0 {
        let next = (s + step).min(1.0);
        match solve_with(model, &params.scaled(next), current.profile.clone(), config) {
            Ok(sol) => {
                iterations += sol.iterations;
                current = sol;
                s = next;
                step *= 1.5;
            }
            Err(_) if step > 1e-4 => step *= 0.5,
            Err(_) => return None,
        }
    }
    current.iterations = iterations;
    Some(current)
}

pub(crate) fn solve_with(
    model: &PayoffModel<f64>,
    params: &ResponseParams,
    start: StrategyProfile<f64>,
    config: &FixedPointConfig,
) -> Result<QreSolution, SolverError> {
    let mut sigma = start;
    let mut d = config.damping;
    let mut image = respond(model, params, &sigma)?;
    let mut res = residual(&sigma, &image);
    let mut best = (res, sigma.clone());
    for it in 0..config.max_iterations {
        if res < config.residual_tol {
            return Ok(QreSolution {
                profile: sigma,
                residual: res,
                iterations: it,
            });
        }
        let next = blend(&sigma, &image, d);
        let next_image = respond(model, params, &next)?;
        let next_res = residual(&next, &next_image);
        if config.adaptive {
            if next_res > res {
                d = (d * 0.5).max(1e-4);
            } else {
                d = (d * 1.2).min(1.0);
            }
        }
        sigma = next;
        image = next_image;
        res = next_res;
        if res < best.0 {
            best = (res, sigma.clone());
        }
    }
    if res < config.residual_tol {
        return Ok(QreSolution {
            profile: sigma,
            residual: res,
            iterations: config.max_iterations,
        });
    }
    if config.newton_iterations > 0 {
        log::debug!(
            "damped iteration stalled at residual {:e}; trying Newton",
            best.0
        );
        if let Some((profile, residual, steps)) = newton(model, params, &best.1, config)? {
            return Ok(QreSolution {
                profile,
                residual,
                iterations: config.max_iterations + steps,
            });
        }
    }
    Err(SolverError::NonConvergence {
        residual: best.0,
        best: Box::new(best.1),
    })
}

fn blend(a: &StrategyProfile<f64>, b: &StrategyProfile<f64>, d: f64) -> StrategyProfile<f64> {
    let dists = a
        .dists()
        .iter()
        .zip(b.dists())
        .map(|(ta, tb)| {
            ta.iter()
                .zip(tb)
                .map(|(x, y)| match (x, y) {
                    (Some(x), Some(y)) => Some(
                        x.iter()
                            .zip(y)
                            .map(|(p, q)| (1.0 - d) * p + d * q)
                            .collect(),
                    ),
                    _ => None,
                })
                .collect()
        })
        .collect();
    StrategyProfile::new(dists)
}

fn flatten(p: &StrategyProfile<f64>) -> Vec<f64> {
    p.entries()
        .flat_map(|(_, _, d)| d.iter().copied())
        .collect()
}

/// Writes `x` back into the shape of `like`, projecting each block onto the simplex.
fn unflatten(like: &StrategyProfile<f64>, x: &[f64]) -> StrategyProfile<f64> {
    let mut dists = reshape(like, x);
    for block in dists.iter_mut().flatten().flatten() {
        block.iter_mut().for_each(|v| *v = v.max(0.0));
        let total: f64 = block.iter().sum();
        if total > 0.0 {
            block.iter_mut().for_each(|v| *v /= total);
        } else {
            let u = 1.0 / block.len() as f64;
            block.fill(u);
        }
    }
    StrategyProfile::new(dists)
}

fn excess(
    model: &PayoffModel<f64>,
    params: &ResponseParams,
    sigma: &StrategyProfile<f64>,
) -> Result<Vec<f64>, SolverError> {
    let image = respond(model, params, sigma)?;
    Ok(flatten(&image)
        .iter()
        .zip(flatten(sigma))
        .map(|(q, s)| q - s)
        .collect())
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Newton's method on `Q(U(σ)) - σ` with a forward-difference Jacobian and
/// backtracking on the max-norm residual.
fn newton(
    model: &PayoffModel<f64>,
    params: &ResponseParams,
    start: &StrategyProfile<f64>,
    config: &FixedPointConfig,
) -> Result<Option<(StrategyProfile<f64>, f64, usize)>, SolverError> {
    let mut sigma = start.clone();
    let mut f = excess(model, params, &sigma)?;
    let mut res = max_abs(&f);
    let n = f.len();
    for step in 0..config.newton_iterations {
        if res < config.residual_tol {
            return Ok(Some((sigma, res, step)));
        }
        let x = flatten(&sigma);
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for c in 0..n {
            let h = 1e-7 * x[c].abs().max(1e-3);
            let mut xh = x.clone();
            xh[c] += h;
            // No projection here: the Jacobian is taken in the ambient space.
            let probe = StrategyProfile::new(reshape(&sigma, &xh));
            let fh = excess(model, params, &probe)?;
            for r in 0..n {
                jac[(r, c)] = (fh[r] - f[r]) / h;
            }
        }
        let Some(dx) = jac.lu().solve(&DVector::from_column_slice(&f).scale(-1.0)) else {
            return Ok(None);
        };
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, b)| a + t * b).collect();
            let candidate = unflatten(&sigma, &trial);
            let fc = excess(model, params, &candidate)?;
            let rc = max_abs(&fc);
            if rc < res {
                sigma = candidate;
                f = fc;
                res = rc;
                break;
            }
            t *= 0.5;
            if t < 1e-10 {
                return Ok(None);
            }
        }
    }
    Ok((res < config.residual_tol).then_some((sigma, res, config.newton_iterations)))
}

fn reshape(like: &StrategyProfile<f64>, x: &[f64]) -> Vec<Vec<Option<Vec<f64>>>> {
    let mut k = 0;
    like.dists()
        .iter()
        .map(|ts| {
            ts.iter()
                .map(|d| {
                    d.as_ref().map(|d| {
                        let block = x[k..k + d.len()].to_vec();
                        k += d.len();
                        block
                    })
                })
                .collect()
        })
        .collect()
}
