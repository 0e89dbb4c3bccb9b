use log::debug;

use crate::game::{BayesianGame, PayoffModel, StrategyProfile};
use crate::numeric::to_f64;

use super::fixed_point::solve_with;
use super::monotone::{is_weakly_payoff_monotone, MonotonicityReport, TOL_P, TOL_U};
use super::nash::{is_bayesian_nash, lemma1_support_test, SupportVerdict};
use super::{HomotopySchedule, ResponseKind, ResponseParams, SolverError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    /// A weakly dominant message is missing from the support.
    NecessaryTestFailed,
    /// A monotone sequence reached the target within the limit tolerance.
    CertifiedApproachable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateStep {
    pub profile: StrategyProfile<f64>,
    /// Max-norm distance to the target.
    pub distance: f64,
    pub report: MonotonicityReport,
    /// Noise floor used for this element.
    pub delta: f64,
    /// Response families that produced the element.
    pub params: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalCertificate {
    pub target: StrategyProfile<f64>,
    pub support: SupportVerdict,
    /// Distances strictly decrease; every report is monotone.
    pub sequence: Vec<CertificateStep>,
    pub verdict: CertificateVerdict,
}

impl EmpiricalCertificate {
    pub fn final_distance(&self) -> Option<f64> {
        self.sequence.last().map(|s| s.distance)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    /// Precondition tolerance for the target being an equilibrium.
    pub nash_tol: f64,
    /// Probabilities at or below this are outside the support.
    pub support_tol: f64,
    /// Rounds `k = 1..=rounds` use noise floor `δ_k = 10^{-k}`.
    pub rounds: u32,
    /// Multipliers of `ln(1/δ) / payoff range` for agent-types with pure targets.
    pub pure_scales: Vec<f64>,
    /// The same for agent-types with mixed targets (0 allowed).
    pub mixed_scales: Vec<f64>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            nash_tol: 1e-9,
            support_tol: 0.0,
            rounds: 12,
            pure_scales: vec![1.0, 4.0, 16.0],
            mixed_scales: vec![0.0, 1.0, 4.0, 16.0],
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum PureFamily {
    Logistic,
    Kappa,
    Anchored,
}

#[derive(Clone, Copy, Debug)]
enum MixedFamily {
    Kappa,
    Anchored,
}

/// Searches for weakly payoff monotone profiles approaching `target`.
///
/// The target must be a Bayesian Nash equilibrium. If a weakly dominant message
/// is missing from its support the verdict is `NecessaryTestFailed`. Otherwise
/// each round fixes a noise floor `δ` and solves heterogeneous fixed points:
/// agent-types with pure targets get logistic responses with growing `λ` and
/// agent-types with mixed targets get κ responses with floor `δ`. When no such
/// candidate improves, κ and target-anchored variants are tried. The closest
/// monotone solution is kept when it improves on the previous element.
pub fn certify_empirical(
    game: &BayesianGame,
    target: &StrategyProfile<f64>,
    schedule: &HomotopySchedule,
) -> Result<EmpiricalCertificate, SolverError> {
    certify_empirical_with(game, target, schedule, &CertifyOptions::default())
}

pub fn certify_empirical_with(
    game: &BayesianGame,
    target: &StrategyProfile<f64>,
    schedule: &HomotopySchedule,
    options: &CertifyOptions,
) -> Result<EmpiricalCertificate, SolverError> {
    schedule.validate()?;
    if !is_bayesian_nash(game, target, options.nash_tol)? {
        return Err(SolverError::NotEquilibrium);
    }
    let support = lemma1_support_test(game, target, options.nash_tol, options.support_tol)?;
    if !support.passed {
        return Ok(EmpiricalCertificate {
            target: target.clone(),
            support,
            sequence: Vec::new(),
            verdict: CertificateVerdict::NecessaryTestFailed,
        });
    }
    let model = PayoffModel::<f64>::new(game);
    let config = schedule.fixed_point_config();
    let range = to_f64(&game.payoff_range()).max(1e-12);
    let mut sequence: Vec<CertificateStep> = Vec::new();
    let mut best = f64::INFINITY;
    for k in 1..=options.rounds {
        let delta = 10f64.powi(-(k as i32));
        let base = (1.0 / delta).ln() / range;
        let mut round_best: Option<CertificateStep> = None;
        // Logistic/κ first; the other families only when those make no progress.
        let tiers: [&[(PureFamily, MixedFamily)]; 2] = [
            &[(PureFamily::Logistic, MixedFamily::Kappa)],
            &[
                (PureFamily::Logistic, MixedFamily::Anchored),
                (PureFamily::Kappa, MixedFamily::Kappa),
                (PureFamily::Kappa, MixedFamily::Anchored),
                (PureFamily::Anchored, MixedFamily::Kappa),
                (PureFamily::Anchored, MixedFamily::Anchored),
            ],
        ];
        for tier in tiers {
            if round_best.is_some() {
                break;
            }
            for &(family_p, family_m) in tier {
                for &cp in &options.pure_scales {
                    for &cm in &options.mixed_scales {
                        let lambda_p = cp * base;
                        let lambda_m = cm * base;
                        let params = ResponseParams::from_fn(game, |i, t| {
                            let d = target.get(i, t).expect("validated target");
                            let pure = d.iter().any(|&p| p >= 1.0 - 1e-12);
                            if pure {
                                match family_p {
                                    PureFamily::Logistic => {
                                        ResponseKind::Logistic { lambda: lambda_p }
                                    }
                                    PureFamily::Kappa => ResponseKind::Kappa {
                                        eps: delta,
                                        lambda: lambda_p,
                                    },
                                    PureFamily::Anchored => ResponseKind::Anchored {
                                        eps: delta,
                                        lambda: lambda_p,
                                        anchor: d.to_vec(),
                                    },
                                }
                            } else {
                                match family_m {
                                    MixedFamily::Kappa => ResponseKind::Kappa {
                                        eps: delta,
                                        lambda: lambda_m,
                                    },
                                    MixedFamily::Anchored => ResponseKind::Anchored {
                                        eps: delta,
                                        lambda: lambda_m,
                                        anchor: d.to_vec(),
                                    },
                                }
                            }
                        });
                        let start = perturb(game, target, delta);
                        let Ok(sol) = solve_with(&model, &params, start, &config) else {
                            continue;
                        };
                        let distance = sol.profile.distance(target);
                        if distance >= best
                            || round_best.as_ref().is_some_and(|b| distance >= b.distance)
                        {
                            continue;
                        }
                        let report = is_weakly_payoff_monotone(game, &sol.profile, TOL_P, TOL_U)?;
                        if !report.verdict {
                            continue;
                        }
                        round_best = Some(CertificateStep {
                            profile: sol.profile,
                            distance,
                            report,
                            delta,
                            params: format!(
                                "pure={family_p:?}(λ={lambda_p:.4}) mixed={family_m:?}(λ={lambda_m:.4}) δ={delta:e}"
                            ),
                        });
                    }
                }
            }
        }
        if let Some(step) = round_best {
            debug!(
                "round {k}: distance {:e} via {}",
                step.distance, step.params
            );
            best = step.distance;
            sequence.push(step);
            if best < schedule.limit_tol {
                return Ok(EmpiricalCertificate {
                    target: target.clone(),
                    support,
                    sequence,
                    verdict: CertificateVerdict::CertifiedApproachable,
                });
            }
        }
    }
    Ok(EmpiricalCertificate {
        target: target.clone(),
        support,
        sequence,
        verdict: CertificateVerdict::Inconclusive,
    })
}

/// `(1-δ) target + δ uniform`.
fn perturb(game: &BayesianGame, target: &StrategyProfile<f64>, delta: f64) -> StrategyProfile<f64> {
    StrategyProfile::from_fn(game, |i, t| {
        let d = target.get(i, t).expect("validated target");
        let n = d.len() as f64;
        d.iter().map(|p| (1.0 - delta) * p + delta / n).collect()
    })
}
