//! Independent reference solvers: projected-gradient ascent on the secrecy
//! rate over the feasible set, and dense random rank-one search. Neither is
//! certified; together they validate the closed-form and fixed-point solvers
//! at desk scale.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channel::{ChannelPair, InputCovariance, Snr, secrecy_rate, theta};
use crate::closed_form::{SecrecySolution, SolverKind};
use crate::hermitian::HermitianMatrix;
use crate::{C64, CMatrix, CVector};

/// Multi-start ascent and sampling knobs.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub n_starts: usize,
    pub n_rank_one_samples: usize,
    pub step_init: f64,
    pub step_shrink: f64,
    pub max_iters: usize,
    /// Stop when a full backtracking sweep improves the rate by less than this.
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_starts: 16,
            n_rank_one_samples: 20_000,
            step_init: 1.0,
            step_shrink: 0.5,
            max_iters: 5_000,
            grad_tol: 1e-8,
            seed: 0,
        }
    }
}

/// Frobenius-nearest point of the feasible set: eigenvalues are projected
/// onto the probability simplex by the sorted-threshold rule, eigenvectors
/// are kept.
pub fn spectrahedron_project(m: &HermitianMatrix) -> InputCovariance {
    let (values, vectors) = m.eigen_descending();
    let projected = simplex_project(&values);
    let n = m.dim();
    let mut d = CMatrix::zeros(n, n);
    for (i, &v) in projected.iter().enumerate() {
        d[(i, i)] = C64::new(v, 0.0);
    }
    let q = HermitianMatrix::symmetrize(&vectors * d * vectors.adjoint());
    InputCovariance::new(q).expect("simplex projection is feasible")
}

/// Euclidean projection of a descending-sorted vector onto the simplex.
fn simplex_project(sorted_desc: &[f64]) -> Vec<f64> {
    let n = sorted_desc.len();
    let mut cumsum = 0.0;
    let mut threshold = 0.0;
    let mut found = false;
    for (k, &v) in sorted_desc.iter().enumerate() {
        cumsum += v;
        let t = (cumsum - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            threshold = t;
        } else {
            found = true;
            break;
        }
        if k == n - 1 {
            found = true;
        }
    }
    debug_assert!(found);
    sorted_desc.iter().map(|&v| (v - threshold).max(0.0)).collect()
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

fn ascend(
    pair: &ChannelPair,
    snr: Snr,
    start: InputCovariance,
    config: &OracleConfig,
) -> (InputCovariance, f64) {
    let mut q = start;
    let mut rate = secrecy_rate(pair, snr, &q);
    for _ in 0..config.max_iters {
        let direction = theta(pair, snr, &q);
        let mut step = config.step_init;
        let mut accepted = false;
        // Backtracking: accept the first step that improves the rate.
        for _ in 0..60 {
            let trial_matrix = HermitianMatrix::symmetrize(
                q.matrix().as_matrix()
                    + direction.as_matrix().map(|z| z * C64::new(step, 0.0)),
            );
            let trial = spectrahedron_project(&trial_matrix);
            let trial_rate = secrecy_rate(pair, snr, &trial);
            if trial_rate > rate {
                let improvement = trial_rate - rate;
                q = trial;
                rate = trial_rate;
                accepted = improvement > config.grad_tol;
                break;
            }
            step *= config.step_shrink;
        }
        if !accepted {
            break;
        }
    }
    (q, rate)
}

/// Multi-start projected-gradient ascent; the ascent direction is `Θ`.
/// Returns the best endpoint across starts, uncertified.
pub fn projected_gradient_ascent(
    pair: &ChannelPair,
    snr: Snr,
    config: &OracleConfig,
) -> SecrecySolution {
    let n = pair.n_t();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best: Option<(InputCovariance, f64)> = None;
    for start_idx in 0..config.n_starts.max(1) {
        let start = if start_idx == 0 {
            InputCovariance::uniform(n)
        } else {
            random_feasible(&mut rng, n)
        };
        let (q, rate) = ascend(pair, snr, start, config);
        // Deterministic tie rule: strictly-better rate replaces (lowest
        // start index wins ties).
        if best.as_ref().map_or(true, |(_, r)| rate > *r) {
            best = Some((q, rate));
        }
    }
    let (q, capacity_nats) = best.expect("at least one start");
    SecrecySolution {
        q,
        capacity_nats,
        solver: SolverKind::Oracle,
        kkt: None,
        certified: false,
        degenerate: false,
    }
}

/// Dense sampling of rank-one covariances `uu†` with `u` uniform on the
/// complex unit sphere. Complements the ascent, which can stall on the
/// rank-one boundary of the feasible set.
pub fn random_rank_one_search(
    pair: &ChannelPair,
    snr: Snr,
    config: &OracleConfig,
) -> SecrecySolution {
    let n = pair.n_t();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let mut best: Option<(CVector, f64)> = None;
    for _ in 0..config.n_rank_one_samples {
        let u = CVector::from_fn(n, |_, _| {
            C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
        });
        let q = InputCovariance::from_unit_vector(&u);
        let rate = secrecy_rate(pair, snr, &q);
        if best.as_ref().map_or(true, |(_, r)| rate > *r) {
            best = Some((u, rate));
        }
    }
    let (u, capacity_nats) = best.expect("at least one sample");
    SecrecySolution {
        q: InputCovariance::from_unit_vector(&u),
        capacity_nats,
        solver: SolverKind::Oracle,
        kkt: None,
        certified: false,
        degenerate: false,
    }
}

/// Best of the gradient-ascent and rank-one-search references.
pub fn oracle_best(pair: &ChannelPair, snr: Snr, config: &OracleConfig) -> SecrecySolution {
    let ascent = projected_gradient_ascent(pair, snr, config);
    let rank_one = random_rank_one_search(pair, snr, config);
    if rank_one.capacity_nats > ascent.capacity_nats {
        rank_one
    } else {
        ascent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand::rngs::StdRng;

    #[test]
    fn simplex_projection_examples() {
        assert_eq!(simplex_project(&[2.0, 0.0]), vec![1.0, 0.0]);
        let p = simplex_project(&[0.5, 0.5]);
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn spectrahedron_projection_variational_inequality() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..20 {
            let g = random_complex_matrix(&mut rng, 3, 3);
            let m = HermitianMatrix::symmetrize(g);
            let proj = spectrahedron_project(&m);
            assert_abs_diff_eq!(proj.matrix().trace(), 1.0, epsilon = 1e-10);
            assert!(proj.matrix().lambda_min() >= -1e-10);
            // ⟨M − proj, Z − proj⟩ ≤ 0 for feasible Z.
            let gap = m.as_matrix() - proj.matrix().as_matrix();
            for _ in 0..100 {
                let z = random_covariance(&mut rng, 3);
                let inner =
                    (gap.adjoint() * (z.matrix().as_matrix() - proj.matrix().as_matrix()))
                        .trace()
                        .re;
                assert!(inner <= 1e-9, "variational inequality violated: {inner}");
            }
        }
    }

    #[test]
    fn ascent_finds_symmetric_optimum_without_eavesdropper() {
        // H_E ≈ 0, H_R = I₂: optimum Q = I/2, rate 2·log(1 + ρ/2).
        let h_r = CMatrix::identity(2, 2);
        let h_e = CMatrix::from_fn(1, 2, |_, j| C64::new(if j == 0 { 1e-13 } else { 0.0 }, 0.0));
        let pair = crate::channel::ChannelPair::new(h_r, h_e, false).unwrap();
        let rho = 3.0;
        let config = OracleConfig { n_starts: 4, max_iters: 2000, grad_tol: 1e-12, ..Default::default() };
        let sol = projected_gradient_ascent(&pair, Snr::from_linear(rho), &config);
        let expect = 2.0 * (1.0 + rho / 2.0).ln();
        assert_abs_diff_eq!(sol.capacity_nats, expect, epsilon = 1e-7);
    }

    #[test]
    fn ascent_matches_miso_closed_form() {
        let mut rng = StdRng::seed_from_u64(2);
        let mut checked = 0;
        while checked < 10 {
            let (h_r, h_e) = random_miso_vectors(&mut rng, 3);
            let snr = Snr::from_linear(1.0);
            let closed = match crate::closed_form::solve_miso(&h_r, &h_e, snr) {
                Ok(s) if !s.degenerate => s,
                _ => continue,
            };
            let pair = crate::channel::ChannelPair::miso(&h_r, &h_e).unwrap();
            let config = OracleConfig { n_starts: 4, ..Default::default() };
            let sol = projected_gradient_ascent(&pair, snr, &config);
            assert!(
                (sol.capacity_nats - closed.capacity_nats).abs() < 1e-6,
                "gap {}",
                sol.capacity_nats - closed.capacity_nats
            );
            checked += 1;
        }
    }

    #[test]
    fn rank_one_search_near_certified_optimum() {
        let mut rng = StdRng::seed_from_u64(3);
        let pair = random_one_positive_instance(&mut rng, 3);
        let snr = Snr::from_linear(2.0);
        let certified = crate::closed_form::solve_rank_one_general(&pair, snr).unwrap();
        let config = OracleConfig { n_rank_one_samples: 20_000, ..Default::default() };
        let sampled = random_rank_one_search(&pair, snr, &config);
        assert!(sampled.capacity_nats <= certified.capacity_nats + 1e-6);
        assert!(
            certified.capacity_nats - sampled.capacity_nats < 1e-2,
            "gap {} (certified {}, sampled {})",
            certified.capacity_nats - sampled.capacity_nats,
            certified.capacity_nats,
            sampled.capacity_nats
        );
    }

    #[test]
    fn deterministic_given_seed() {
        let mut rng = StdRng::seed_from_u64(4);
        let pair = random_channel_pair(&mut rng, 3, 2, 2);
        let snr = Snr::from_linear(2.0);
        let config = OracleConfig { n_starts: 3, n_rank_one_samples: 500, ..Default::default() };
        let a = oracle_best(&pair, snr, &config);
        let b = oracle_best(&pair, snr, &config);
        assert_eq!(a.capacity_nats, b.capacity_nats);
    }

    #[test]
    fn one_dimensional_transmitter_is_exact() {
        let pair = crate::channel::ChannelPair::new(
            CMatrix::from_fn(1, 1, |_, _| C64::new(2.0, 0.0)),
            CMatrix::from_fn(1, 1, |_, _| C64::new(1.0, 0.0)),
            false,
        )
        .unwrap();
        let snr = Snr::from_linear(1.0);
        let config = OracleConfig { n_rank_one_samples: 3, ..Default::default() };
        let sol = random_rank_one_search(&pair, snr, &config);
        assert_abs_diff_eq!(sol.capacity_nats, (5.0f64 / 2.0).ln(), epsilon = 1e-12);
    }
}
