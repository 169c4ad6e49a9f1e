//! Multiplier-free optimality residuals.
//!
//! The stationarity conditions are `QΘ = Tr(QΘ)Q` and `λmax(Θ) = Tr(QΘ)`;
//! the Lagrange multipliers are eliminated, so verification needs only `Θ`
//! and the candidate `Q`. The combined single-equation form uses
//! `K = Θ + γI ≻ 0` with `γ` just above `λmax(S_E)`.

use crate::channel::{ChannelPair, InputCovariance, Snr, theta};
use crate::hermitian::HermitianMatrix;
use crate::C64;

/// Default pass tolerance, matching the iteration's stopping threshold.
pub const DEFAULT_KKT_TOL: f64 = 1e-6;
/// Relative margin applied to `γ = λmax(S_E)` to keep `K` strictly PD.
pub const GAMMA_MARGIN: f64 = 1e-6;

/// Residual report for a candidate covariance.
#[derive(Debug, Clone)]
pub struct KktReport {
    /// `‖QΘ − Tr(QΘ)Q‖_F`.
    pub r_commute: f64,
    /// `λmax(Θ) − Tr(QΘ)`, signed. Zero at a stationary point; nonnegative
    /// (up to roundoff) for every feasible `Q`.
    pub r_lambda: f64,
    /// Frobenius norm of the single-equation residual
    /// `QK − ½(Tr Q + 1/Tr Q) λmax(K) Q`.
    pub r_single: f64,
    /// `|Tr(Q) − 1|`.
    pub trace_gap: f64,
    pub min_eig_q: f64,
    pub passed: bool,
    pub gamma_used: f64,
    /// Scale used for the scale-free view: `max(1, λmax(Θ))`.
    pub theta_scale: f64,
}

impl KktReport {
    /// Residuals divided by `max(1, λmax(Θ))`, for comparison across SNRs.
    pub fn scale_free(&self) -> (f64, f64, f64) {
        (
            self.r_commute / self.theta_scale,
            self.r_lambda / self.theta_scale,
            self.r_single / self.theta_scale,
        )
    }
}

/// Evaluates the stationarity residuals of `q` at tolerance `tol`.
pub fn kkt_residuals(pair: &ChannelPair, snr: Snr, q: &InputCovariance, tol: f64) -> KktReport {
    let th = theta(pair, snr, q);
    let q_mat = q.matrix().as_matrix();
    let tr_qtheta = q.matrix().trace_product(&th);
    let qtheta = q_mat * th.as_matrix();
    let r_commute = (&qtheta - q_mat.map(|z| z * C64::new(tr_qtheta, 0.0))).norm();
    let lambda_max = th.lambda_max();
    let r_lambda = lambda_max - tr_qtheta;

    let (_, s_e) = pair.grams(snr);
    let gamma = s_e.lambda_max() * (1.0 + GAMMA_MARGIN);
    let n = pair.n_t();
    let k = HermitianMatrix::symmetrize(
        th.as_matrix() + crate::CMatrix::identity(n, n).map(|z| z * C64::new(gamma, 0.0)),
    );
    let trace_q = q.matrix().trace();
    let factor = 0.5 * (trace_q + 1.0 / trace_q) * k.lambda_max();
    let r_single = (q_mat * k.as_matrix() - q_mat.map(|z| z * C64::new(factor, 0.0))).norm();

    let trace_gap = (trace_q - 1.0).abs();
    let min_eig_q = q.matrix().lambda_min();
    let worst = r_commute
        .max(r_lambda.abs())
        .max(trace_gap)
        .max((-min_eig_q).max(0.0));
    KktReport {
        r_commute,
        r_lambda,
        r_single,
        trace_gap,
        min_eig_q,
        passed: worst < tol,
        gamma_used: gamma,
        theta_scale: lambda_max.max(1.0),
    }
}

/// Structural diagnostics from the commutation properties of the optimum.
#[derive(Debug, Clone)]
pub struct Property1Diagnostics {
    pub rank_theta: usize,
    pub rank_difference: usize,
    pub rank_q: usize,
    /// Smallest eigenvalue of `Q(S_R − S_E)Q`; nonnegative at the optimum.
    pub min_eig_sandwich: f64,
    /// `‖AB − BA‖_F` for `A = Q + QS_EQ`, `B = Q + QS_RQ`.
    pub commutator_norm: f64,
}

/// Numerical ranks at `1e-8·λmax` plus the sandwich / commutator checks.
pub fn property1_diagnostics(
    pair: &ChannelPair,
    snr: Snr,
    q: &InputCovariance,
) -> Property1Diagnostics {
    let th = theta(pair, snr, q);
    let (s_r, s_e) = pair.grams(snr);
    let diff = &s_r - &s_e;
    let q_mat = q.matrix().as_matrix();

    let numerical_rank = |m: &HermitianMatrix| {
        let eigs = m.eigenvalues();
        let scale = eigs.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
        let tol = 1e-8 * scale.max(f64::MIN_POSITIVE);
        eigs.iter().filter(|&&v| v.abs() > tol).count()
    };

    let sandwich = HermitianMatrix::symmetrize(q_mat * diff.as_matrix() * q_mat);
    let a = q_mat + q_mat * s_e.as_matrix() * q_mat;
    let b = q_mat + q_mat * s_r.as_matrix() * q_mat;
    let commutator_norm = (&a * &b - &b * &a).norm();

    Property1Diagnostics {
        rank_theta: numerical_rank(&th),
        rank_difference: numerical_rank(&diff),
        rank_q: numerical_rank(q.matrix()),
        min_eig_sandwich: sandwich.lambda_min(),
        commutator_norm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::secrecy_rate;
    use crate::test_util::*;
    use rand::SeedableRng;
    use rand::rngs::StdRng;

    #[test]
    fn random_feasible_point_has_nonnegative_r_lambda() {
        let mut rng = StdRng::seed_from_u64(101);
        for _ in 0..100 {
            let pair = random_channel_pair(&mut rng, 3, 2, 2);
            let q = random_covariance(&mut rng, 3);
            let report = kkt_residuals(&pair, Snr::from_linear(5.0), &q, DEFAULT_KKT_TOL);
            assert!(report.r_lambda >= -1e-9);
        }
    }

    #[test]
    fn random_point_is_not_stationary_on_generic_instance() {
        let mut rng = StdRng::seed_from_u64(202);
        let pair = random_channel_pair(&mut rng, 4, 4, 3);
        let q = random_covariance(&mut rng, 4);
        let report = kkt_residuals(&pair, Snr::from_db(8.0), &q, DEFAULT_KKT_TOL);
        assert!(report.r_lambda > 0.0);
        assert!(!report.passed);
    }

    #[test]
    fn diagonal_instance_commutator_is_zero() {
        let pair = crate::channel::ChannelPair::new(
            crate::CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                crate::C64::new(2.0, 0.0),
                crate::C64::new(0.5, 0.0),
            ])),
            crate::CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                crate::C64::new(0.3, 0.0),
                crate::C64::new(1.0, 0.0),
            ])),
            false,
        )
        .unwrap();
        let q = crate::channel::InputCovariance::new(
            crate::hermitian::HermitianMatrix::from_diagonal(&[0.7, 0.3]),
        )
        .unwrap();
        let diag = property1_diagnostics(&pair, Snr::from_linear(2.0), &q);
        assert!(diag.commutator_norm < 1e-14);
    }

    #[test]
    fn uniform_q_violates_sandwich_on_indefinite_instance() {
        let mut rng = StdRng::seed_from_u64(303);
        let pair = random_indefinite_2x2(&mut rng);
        let q = crate::channel::InputCovariance::uniform(2);
        let diag = property1_diagnostics(&pair, Snr::from_linear(5.0), &q);
        assert!(diag.min_eig_sandwich < -1e-12);
        let _ = secrecy_rate(&pair, Snr::from_linear(5.0), &q);
    }
}
