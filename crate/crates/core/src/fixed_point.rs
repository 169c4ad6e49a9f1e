//! Fixed-point iteration `Q ↦ K^{1/2} Q K^{1/2} / Tr(QK)` on the feasible
//! set, with seeded restarts and KKT verification of the limit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::channel::{ChannelPair, InputCovariance, Snr, secrecy_rate, theta};
use crate::closed_form::{SecrecySolution, SolverKind};
use crate::hermitian::{HermitianMatrix, psd_project, psd_sqrt};
use crate::kkt::kkt_residuals;
use crate::{C64, CMatrix};

#[derive(Debug, Error)]
pub enum FixedPointError {
    #[error("K = Θ + γI is not positive definite (λmin = {lambda_min:.3e}); gamma too small")]
    NonPositiveK { lambda_min: f64 },
}

/// Iteration and restart knobs.
#[derive(Debug, Clone)]
pub struct FixedPointConfig {
    pub max_iter: usize,
    /// Frobenius stopping threshold on `‖Q^{k+1} − Q^k‖`.
    pub stop_tol: f64,
    /// Relative margin over `λmax(S_E)` in `γ`.
    pub gamma_margin: f64,
    pub max_restarts: usize,
    pub seed: u64,
    /// KKT pass tolerance applied to converged iterates.
    pub verify_tol: f64,
}

impl Default for FixedPointConfig {
    fn default() -> Self {
        Self {
            max_iter: 10_000,
            stop_tol: 1e-6,
            gamma_margin: 1e-6,
            max_restarts: 8,
            seed: 0,
            verify_tol: 1e-5,
        }
    }
}

/// Outcome of one full solve: best candidate plus iteration history.
#[derive(Debug, Clone)]
pub struct SolverReport {
    pub solution: SecrecySolution,
    pub iterations: usize,
    pub restarts_used: usize,
    /// `‖Q^{k+1} − Q^k‖_F` per accepted iteration of the reported run.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    pub kkt_passed: bool,
}

/// One application of the map `f(Q) = K^{1/2} Q K^{1/2} / Tr(QK)` with
/// `K = Θ(Q) + γI`. The result is PSD-repaired (roundoff only) and exactly
/// trace-renormalized.
pub fn fixed_point_map(
    pair: &ChannelPair,
    snr: Snr,
    q: &InputCovariance,
    gamma: f64,
) -> Result<InputCovariance, FixedPointError> {
    let th = theta(pair, snr, q);
    let n = pair.n_t();
    let k = HermitianMatrix::symmetrize(
        th.as_matrix() + CMatrix::identity(n, n).map(|z| z * C64::new(gamma, 0.0)),
    );
    let lambda_min = k.lambda_min();
    if lambda_min <= 0.0 {
        return Err(FixedPointError::NonPositiveK { lambda_min });
    }
    let k_sqrt = psd_sqrt(&k).expect("K is positive definite");
    let mapped = HermitianMatrix::symmetrize(
        k_sqrt.as_matrix() * q.matrix().as_matrix() * k_sqrt.as_matrix(),
    );
    let (mut repaired, _) = psd_project(&mapped);
    let trace = repaired.trace();
    repaired = HermitianMatrix::symmetrize(repaired.into_matrix().map(|z| z / trace));
    Ok(InputCovariance::new(repaired).expect("map output is feasible"))
}

struct RunOutcome {
    q: InputCovariance,
    rate: f64,
    iterations: usize,
    residual_history: Vec<f64>,
    converged: bool,
    kkt_passed: bool,
}

fn run_iteration(
    pair: &ChannelPair,
    snr: Snr,
    start: InputCovariance,
    gamma: f64,
    config: &FixedPointConfig,
) -> RunOutcome {
    let mut q = start;
    let mut history = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..config.max_iter {
        let next = match fixed_point_map(pair, snr, &q, gamma) {
            Ok(next) => next,
            Err(_) => break,
        };
        let residual = (next.matrix() - q.matrix()).frobenius_norm();
        history.push(residual);
        iterations += 1;
        q = next;
        if residual > 1e6 {
            // numerical corruption; the map is bounded on the feasible set
            break;
        }
        if residual < config.stop_tol {
            converged = true;
            break;
        }
    }
    let kkt = kkt_residuals(pair, snr, &q, config.verify_tol);
    RunOutcome {
        rate: secrecy_rate(pair, snr, &q),
        q,
        iterations,
        residual_history: history,
        converged,
        kkt_passed: converged && kkt.passed,
    }
}

fn random_feasible(rng: &mut ChaCha8Rng, n: usize) -> InputCovariance {
    let g = CMatrix::from_fn(n, n, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let gram = HermitianMatrix::symmetrize(&g * g.adjoint());
    let trace = gram.trace();
    InputCovariance::new(HermitianMatrix::symmetrize(
        gram.into_matrix().map(|z| z / trace),
    ))
    .expect("normalized Gram is feasible")
}

/// Iterates from `Q⁰ = I/n_t`, verifying the limit with the KKT residuals;
/// on verification failure restarts from seeded random feasible points,
/// keeping the best-rate verified candidate. When every restart fails
/// verification the best unverified candidate is still reported with
/// `kkt_passed = false`.
pub fn solve_fixed_point(pair: &ChannelPair, snr: Snr, config: &FixedPointConfig) -> SolverReport {
    let n = pair.n_t();
    if !pair.positivity_test() {
        // Zero-capacity channel: report the uniform point, flagged degenerate.
        let q = InputCovariance::uniform(n);
        let rate = secrecy_rate(pair, snr, &q);
        return SolverReport {
            solution: SecrecySolution {
                q,
                capacity_nats: rate.max(0.0),
                solver: SolverKind::FixedPoint,
                kkt: None,
                certified: true,
                degenerate: true,
            },
            iterations: 0,
            restarts_used: 0,
            residual_history: Vec::new(),
            converged: true,
            kkt_passed: false,
        };
    }

    let (_, s_e) = pair.grams(snr);
    let gamma = s_e.lambda_max() * (1.0 + config.gamma_margin);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut best_verified: Option<RunOutcome> = None;
    let mut best_any: Option<RunOutcome> = None;
    let mut restarts_used = 0;

    for attempt in 0..=config.max_restarts {
        let start = if attempt == 0 {
            InputCovariance::uniform(n)
        } else {
            restarts_used += 1;
            random_feasible(&mut rng, n)
        };
        let outcome = run_iteration(pair, snr, start, gamma, config);

        let better = |incumbent: &Option<RunOutcome>, challenger: &RunOutcome| match incumbent {
            None => true,
            Some(cur) => {
                challenger.rate > cur.rate + 1e-10
                    || ((challenger.rate - cur.rate).abs() <= 1e-10
                        && challenger.iterations < cur.iterations)
            }
        };
        if better(&best_any, &outcome) {
            best_any = Some(RunOutcome {
                q: outcome.q.clone(),
                residual_history: outcome.residual_history.clone(),
                ..outcome
            });
        }
        if outcome.kkt_passed {
            if better(&best_verified, &outcome) {
                best_verified = Some(outcome);
            }
            // Restarts exist to rescue non-convergent or unverified runs;
            // once one run is verified, further random starts only cost time.
            break;
        }
    }

    let chosen = best_verified
        .or(best_any)
        .expect("at least one attempt ran");
    let kkt = kkt_residuals(pair, snr, &chosen.q, config.verify_tol);
    SolverReport {
        solution: SecrecySolution {
            capacity_nats: chosen.rate,
            q: chosen.q,
            solver: SolverKind::FixedPoint,
            kkt: Some(kkt),
            certified: false,
            degenerate: false,
        },
        iterations: chosen.iterations,
        restarts_used,
        residual_history: chosen.residual_history,
        converged: chosen.converged,
        kkt_passed: chosen.kkt_passed,
    }
}
