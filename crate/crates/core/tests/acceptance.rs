//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass line (run with `cargo test --test acceptance -- --nocapture`
//! to see them; a failed criterion fails its test).

use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use mimo_wiretap::channel::{secrecy_rate, theta, ChannelPair, InputCovariance, Snr};
use mimo_wiretap::closed_form::{
    cs_closed_form_2x2, miso_f_alpha, rank_test_g, solve_2x2, solve_miso, solve_rank_one_general,
};
use mimo_wiretap::fixed_point::{solve_fixed_point, FixedPointConfig};
use mimo_wiretap::fixtures;
use mimo_wiretap::hermitian::{rank2_eigenpairs, DefinitenessTag, HermitianMatrix};
use mimo_wiretap::oracle::{oracle_best, OracleConfig};
use mimo_wiretap::test_util::{
    random_complex_vector, random_covariance, random_indefinite_2x2, random_miso_vectors,
    random_one_positive_instance, random_pd_difference_2x2,
};
use mimo_wiretap::{C64, CVector};

const RANK_THRESHOLD: f64 = 1e-6;

fn pass(n: u32, what: &str, elapsed: std::time::Duration) {
    println!("criterion {n:02} ({what}): PASS in {:.2}s", elapsed.as_secs_f64());
}

/// Oracle configuration tuned for suite runtime: fewer multi-starts and
/// samples than the default, still accurate past 1e-6 on small instances.
fn fast_oracle() -> OracleConfig {
    OracleConfig {
        n_starts: 6,
        n_rank_one_samples: 2_000,
        max_iters: 3_000,
        ..Default::default()
    }
}

#[test]
fn criterion_01_fixture_spectra() {
    let t = Instant::now();
    let expected: [(&str, [f64; 4], DefinitenessTag); 2] = [
        (
            "paper_ex1",
            [2.5213, 0.8945, 0.3704, 0.0085],
            DefinitenessTag::PositiveDefinite,
        ),
        (
            "paper_ex2",
            [1.8506, 0.9365, -0.1565, -0.8206],
            DefinitenessTag::Indefinite,
        ),
    ];
    for (name, eigs, tag) in expected {
        let pair = fixtures::channel_pair(name).unwrap();
        let class = pair.difference_class();
        assert_eq!(class.tag, tag, "{name}");
        for (got, want) in class.eigenvalues.iter().zip(eigs) {
            assert!(
                (got - want).abs() < 5e-4,
                "{name}: eigenvalue {got} vs printed {want}"
            );
        }
    }
    assert!(t.elapsed().as_secs_f64() < 1.0, "budget: < 1 s");
    pass(1, "fixture difference spectra", t.elapsed());
}

#[test]
fn criterion_02_fixed_point_verified_at_8db() {
    let t = Instant::now();
    let snr = Snr::from_db(8.0);
    for name in fixtures::FIXTURE_NAMES {
        let per_instance = Instant::now();
        let pair = fixtures::channel_pair(name).unwrap();
        let report = solve_fixed_point(&pair, snr, &FixedPointConfig::default());
        assert!(report.converged, "{name}: did not converge");
        assert!(report.iterations <= 10_000, "{name}: iteration budget");
        assert!(
            report.residual_history.last().copied().unwrap_or(f64::MAX) < 1e-6,
            "{name}: last residual"
        );
        assert!(report.kkt_passed, "{name}: stationarity check failed");
        let oracle = oracle_best(&pair, snr, &fast_oracle());
        assert!(
            oracle.capacity_nats - report.solution.capacity_nats <= 1e-4,
            "{name}: oracle beats fixed point by {:.3e}",
            oracle.capacity_nats - report.solution.capacity_nats
        );
        assert!(
            per_instance.elapsed().as_secs_f64() < 30.0,
            "{name}: budget < 30 s per instance"
        );
    }
    pass(2, "fixed-point verified at 8 dB vs oracle", t.elapsed());
}

fn sweep_ranks(name: &str) -> Vec<usize> {
    let pair = fixtures::channel_pair(name).unwrap();
    (0..=10)
        .map(|k| {
            let snr = Snr::from_db(2.0 * k as f64);
            let report = solve_fixed_point(&pair, snr, &FixedPointConfig::default());
            assert!(report.converged, "{name} at {} dB", 2 * k);
            report.solution.q.rank(RANK_THRESHOLD)
        })
        .collect()
}

#[test]
fn criterion_03_indefinite_fixture_rank_two_everywhere() {
    let t = Instant::now();
    let pair = fixtures::channel_pair("paper_ex2").unwrap();
    let positive = pair
        .difference_class()
        .eigenvalues
        .iter()
        .filter(|&&v| v > 0.0)
        .count();
    assert_eq!(positive, 2);
    let ranks = sweep_ranks("paper_ex2");
    assert!(
        ranks.iter().all(|&r| r == 2),
        "expected constant rank 2, got {ranks:?}"
    );
    pass(3, "rank-two pattern over 0-20 dB", t.elapsed());
}

#[test]
fn criterion_04_pd_fixture_rank_growth() {
    let t = Instant::now();
    let ranks = sweep_ranks("paper_ex1");
    for w in ranks.windows(2) {
        assert!(w[1] >= w[0], "rank decreased: {ranks:?}");
        assert!(w[1] - w[0] <= 1, "rank jumped by more than one: {ranks:?}");
    }
    assert!(
        ranks.last().unwrap() > ranks.first().unwrap(),
        "expected at least two distinct rank values: {ranks:?}"
    );
    pass(4, "non-decreasing rank growth over 0-20 dB", t.elapsed());
}

#[test]
fn criterion_05_miso_closed_form_vs_oracle() {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(5);
    let rhos = [0.1, 1.0, 10.0];
    let mut checked = 0;
    while checked < 200 {
        let n_t = 2 + checked % 3;
        let snr = Snr::from_linear(rhos[checked % rhos.len()]);
        let (h_r, h_e) = random_miso_vectors(&mut rng, n_t);
        let sol = match solve_miso(&h_r, &h_e, snr) {
            Ok(s) if !s.degenerate => s,
            _ => continue,
        };

        let alpha = sol.capacity_nats.exp();
        let f_scale = 1.0 + alpha * (1.0 + snr.linear() * h_e.norm_squared());
        assert!(
            miso_f_alpha(&h_r, &h_e, snr, alpha).abs() <= 1e-8 * f_scale,
            "root condition violated at instance {checked}"
        );

        let kkt = sol.kkt.as_ref().unwrap();
        assert!(
            kkt.r_commute < 1e-8 && kkt.r_lambda.abs() < 1e-8 && kkt.trace_gap < 1e-8,
            "stationarity residuals too large at instance {checked}"
        );

        let pair = ChannelPair::miso(&h_r, &h_e).unwrap();
        let oracle = oracle_best(&pair, snr, &fast_oracle());
        assert!(
            (sol.capacity_nats - oracle.capacity_nats).abs() < 1e-6,
            "instance {checked}: closed form {} vs oracle {}",
            sol.capacity_nats,
            oracle.capacity_nats
        );
        checked += 1;
    }
    assert!(t.elapsed().as_secs_f64() < 60.0, "budget: < 60 s total");
    pass(5, "200 random MISO instances vs oracle", t.elapsed());
}

/// Independent evaluation of ln λmax((I + S_E)^{-1}(I + S_R)) through the
/// Hermitian-reduced pencil.
fn pencil_log_lambda_max(pair: &ChannelPair, snr: Snr) -> f64 {
    let (s_r, s_e) = pair.grams(snr);
    let n = pair.n_t();
    let a = HermitianMatrix::identity(n).as_matrix() + s_r.as_matrix();
    let b = HermitianMatrix::identity(n).as_matrix() + s_e.as_matrix();
    let chol = b.cholesky().expect("I + S_E is positive definite");
    let l = chol.l();
    let mut m = a;
    l.solve_lower_triangular_mut(&mut m);
    let mut mt = m.adjoint();
    l.solve_lower_triangular_mut(&mut mt);
    HermitianMatrix::symmetrize(mt.adjoint()).lambda_max().ln()
}

#[test]
fn criterion_06_two_antenna_formula_equals_pencil() {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(6);
    for i in 0..100 {
        let pair = random_indefinite_2x2(&mut rng);
        let snr = Snr::from_linear(0.2 + 2.0 * (i % 7) as f64);
        let formula = cs_closed_form_2x2(&pair, snr).unwrap();
        let reference = pencil_log_lambda_max(&pair, snr);
        assert!(
            (formula - reference).abs() < 1e-9,
            "instance {i}: formula {formula} vs pencil {reference}"
        );
    }
    pass(6, "closed-form capacity equals pencil top eigenvalue", t.elapsed());
}

#[test]
fn criterion_07_one_positive_regime_vs_oracle() {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(7);
    for i in 0..100 {
        let pair = random_one_positive_instance(&mut rng, 3);
        assert_eq!(
            pair.difference_class().tag,
            DefinitenessTag::IndefiniteOnePositive
        );
        let snr = Snr::from_linear(0.5 + (i % 5) as f64);
        let sol = solve_rank_one_general(&pair, snr).unwrap();
        assert!(sol.certified, "instance {i} should be certified");
        let kkt = sol.kkt.as_ref().unwrap();
        assert!(
            kkt.r_commute < 1e-8 && kkt.r_lambda.abs() < 1e-8,
            "instance {i}: residuals {:.2e}/{:.2e}",
            kkt.r_commute,
            kkt.r_lambda
        );
        let oracle = oracle_best(&pair, snr, &fast_oracle());
        assert!(
            (sol.capacity_nats - oracle.capacity_nats).abs() < 1e-6,
            "instance {i}: rank-one {} vs oracle {}",
            sol.capacity_nats,
            oracle.capacity_nats
        );
    }
    pass(7, "100 one-positive instances vs oracle", t.elapsed());
}

#[test]
fn criterion_08_rank_two_update_eigenpairs() {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(8);
    let mut case_iii = 0;
    for i in 0..500 {
        let n = 2 + i % 4;
        let r = random_complex_vector(&mut rng, n);
        let (s, expect_signs): (CVector, bool) = match i % 5 {
            // Forced collinear: s = c·r with |c| ≠ 1.
            0 => (r.clone().map(|z| z * C64::new(0.0, 0.7)), false),
            // Forced orthogonal: Gram-Schmidt a second draw against r.
            1 => {
                let v = random_complex_vector(&mut rng, n);
                let proj = (r.adjoint() * &v)[(0, 0)] / C64::new(r.norm_squared(), 0.0);
                let s = &v - &r * proj;
                if s.norm() < 1e-6 {
                    continue;
                }
                (s, false)
            }
            _ => (random_complex_vector(&mut rng, n), true),
        };
        let m = &HermitianMatrix::outer(&r) - &HermitianMatrix::outer(&s);
        let scale = m.frobenius_norm().max(1.0);
        let pairs = rank2_eigenpairs(&r, &s).unwrap();

        let mut dense: Vec<f64> = m
            .eigenvalues()
            .into_iter()
            .filter(|v| v.abs() > 1e-9 * scale)
            .collect();
        dense.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(pairs.len(), dense.len(), "instance {i}: nonzero count");
        for (p, d) in pairs.iter().zip(&dense) {
            assert!(
                (p.value - d).abs() < 1e-9 * scale,
                "instance {i}: eigenvalue {} vs dense {d}",
                p.value
            );
            let residual =
                (m.as_matrix() * &p.vector - &p.vector * C64::new(p.value, 0.0)).norm();
            assert!(residual < 1e-9 * scale, "instance {i}: residual {residual:.2e}");
        }
        if expect_signs && pairs.len() == 2 {
            assert!(
                pairs[0].value > 0.0 && pairs[1].value < 0.0,
                "instance {i}: sign pattern {:?}",
                (pairs[0].value, pairs[1].value)
            );
            case_iii += 1;
        }
    }
    assert!(case_iii >= 250, "general case under-sampled: {case_iii}");
    pass(8, "500 closed-form rank-two eigenpair checks", t.elapsed());
}

#[test]
fn criterion_09_two_antenna_rank_asymptotics() {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(9);
    for i in 0..50 {
        let pair = random_pd_difference_2x2(&mut rng);
        let high = Snr::from_linear(1e5);
        assert!(
            rank_test_g(&pair, high).unwrap() < 0.0,
            "instance {i}: g(1e5) not negative"
        );
        let sol = solve_2x2(&pair, high).unwrap();
        assert_eq!(sol.q.rank(RANK_THRESHOLD), 2, "instance {i}: rank at 1e5");

        for rho in [0.01, 0.1, 1.0, 10.0, 1e3] {
            let snr = Snr::from_linear(rho);
            let sol = solve_2x2(&pair, snr).unwrap();
            if sol.q.rank(RANK_THRESHOLD) == 1 {
                assert!(
                    rank_test_g(&pair, snr).unwrap() >= -1e-9,
                    "instance {i}: rank-one answer with g({rho}) < 0"
                );
            }
        }
    }
    pass(9, "g(rho) asymptotics and rank-one consistency", t.elapsed());
}

fn lsq_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[test]
fn criterion_10_high_snr_slopes() {
    let t = Instant::now();
    let rhos = [1e3, 1e4, 1e5];

    // Linearly independent MISO channels: one secrecy degree of freedom.
    let h_r = CVector::from_vec(vec![C64::new(1.0, 0.2), C64::new(-0.5, 0.8)]);
    let h_e = CVector::from_vec(vec![C64::new(0.3, -0.1), C64::new(0.6, 0.4)]);
    let miso: Vec<(f64, f64)> = rhos
        .iter()
        .map(|&rho| {
            let sol = solve_miso(&h_r, &h_e, Snr::from_linear(rho)).unwrap();
            (rho.ln(), sol.capacity_nats)
        })
        .collect();
    let miso_slope = lsq_slope(&miso);
    assert!(
        (miso_slope - 1.0).abs() < 0.05,
        "MISO slope {miso_slope} not near 1"
    );

    // Two-antenna transmitter against a full-rank eavesdropper Gram: the
    // capacity saturates, slope near 0.
    let mut rng = StdRng::seed_from_u64(10);
    let pair = random_pd_difference_2x2(&mut rng);
    assert_eq!(pair.n_t(), 2);
    let flat: Vec<(f64, f64)> = rhos
        .iter()
        .map(|&rho| {
            let sol = solve_2x2(&pair, Snr::from_linear(rho)).unwrap();
            (rho.ln(), sol.capacity_nats)
        })
        .collect();
    let flat_slope = lsq_slope(&flat);
    assert!(flat_slope.abs() < 0.05, "saturating slope {flat_slope} not near 0");
    pass(10, "high-SNR capacity slopes", t.elapsed());
}

#[test]
fn criterion_11_gradient_identity() {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(11);
    let eps = 1e-5;
    for i in 0..50 {
        let n_t = 2 + i % 3;
        let pair = mimo_wiretap::test_util::random_channel_pair(&mut rng, n_t, 2, 2);
        if !pair.positivity_test() {
            continue;
        }
        let snr = Snr::from_linear(0.5 + (i % 4) as f64);
        let q = random_covariance(&mut rng, n_t);
        let r = random_covariance(&mut rng, n_t);
        // Feasible direction: Q ± εD stays in the set for D = R − Q.
        let d = HermitianMatrix::symmetrize(r.matrix().as_matrix() - q.matrix().as_matrix());
        let shift = |sign: f64| {
            let m = q.matrix().as_matrix() + d.as_matrix() * C64::new(sign * eps, 0.0);
            InputCovariance::new(HermitianMatrix::symmetrize(m)).unwrap()
        };
        let fd = (secrecy_rate(&pair, snr, &shift(1.0)) - secrecy_rate(&pair, snr, &shift(-1.0)))
            / (2.0 * eps);
        let analytic = d.trace_product(&theta(&pair, snr, &q));
        let scale = analytic.abs().max(1e-3);
        assert!(
            (fd - analytic).abs() / scale < 1e-3,
            "instance {i}: finite difference {fd} vs trace form {analytic}"
        );
    }
    pass(11, "directional derivative matches trace form", t.elapsed());
}
