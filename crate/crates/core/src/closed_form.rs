//! Closed-form and semi-closed-form optimal covariance solvers: the MISO
//! channel, the one-positive-eigenvalue rank-one regime, and the
//! two-antenna transmitter case with its full-rank quadratic candidates
//! and rank test `g(ρ)`.

use thiserror::Error;

use crate::channel::{ChannelPair, ChannelError, InputCovariance, Snr, secrecy_rate};
use crate::hermitian::{
    DefinitenessTag, HermitianMatrix, HermitianError, rank2_eigenpairs,
};
use crate::kkt::{DEFAULT_KKT_TOL, KktReport, kkt_residuals};
use crate::{C64, CMatrix, CVector};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("solver not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
}

/// Which solver produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Miso,
    RankOneGeneral,
    TwoAntennaFullRankA,
    TwoAntennaFullRankB,
    TwoAntennaDispatch,
    FixedPoint,
    Oracle,
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolverKind::Miso => "miso",
            SolverKind::RankOneGeneral => "rank1",
            SolverKind::TwoAntennaFullRankA => "2x2-full-rank-a",
            SolverKind::TwoAntennaFullRankB => "2x2-full-rank-b",
            SolverKind::TwoAntennaDispatch => "2x2",
            SolverKind::FixedPoint => "fixed-point",
            SolverKind::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

/// Optimal (or candidate) covariance together with its secrecy rate.
#[derive(Debug, Clone)]
pub struct SecrecySolution {
    pub q: InputCovariance,
    pub capacity_nats: f64,
    pub solver: SolverKind,
    pub kkt: Option<KktReport>,
    /// True when the producing theorem certifies global optimality.
    pub certified: bool,
    /// True for the zero-capacity case (legitimate channel degraded).
    pub degenerate: bool,
}

/// `F(α)` of the MISO parametric problem; strictly decreasing on `[1, ∞)`
/// with the unique root `α°` at which `C_s = log α°`.
pub fn miso_f_alpha(h_r: &CVector, h_e: &CVector, snr: Snr, alpha: f64) -> f64 {
    let rho = snr.linear();
    let r2 = h_r.norm_squared();
    let e2 = h_e.norm_squared();
    let cross = (h_r.adjoint() * h_e)[(0, 0)].norm();
    1.0 + rho * r2 / 2.0 - (1.0 + rho * e2 / 2.0) * alpha
        + rho / 2.0 * ((r2 + alpha * e2).powi(2) - 4.0 * alpha * cross * cross).max(0.0).sqrt()
}

/// Closed-form MISO secrecy capacity: `α° = (b + √(b²−4ac))/(2a)` with the
/// beamformer taken from the top closed-form eigenpair of
/// `h_R h_R† − α° h_E h_E†`.
pub fn solve_miso(h_r: &CVector, h_e: &CVector, snr: Snr) -> Result<SecrecySolution, SolverError> {
    let r_norm = h_r.norm();
    let e_norm = h_e.norm();
    if r_norm == 0.0 || e_norm == 0.0 {
        return Err(SolverError::NotApplicable("zero channel vector".into()));
    }
    let rho = snr.linear();
    let r2 = r_norm * r_norm;
    let e2 = e_norm * e_norm;
    let cross = (h_r.adjoint() * h_e)[(0, 0)].norm();

    // Degraded legitimate channel: h_R = ξ h_E with |ξ| ≤ 1 gives C_s = 0.
    let collinear = cross > (1.0 - 1e-10) * r_norm * e_norm;
    if collinear && r2 <= e2 {
        let q = InputCovariance::from_unit_vector(h_e);
        return Ok(SecrecySolution {
            q,
            capacity_nats: 0.0,
            solver: SolverKind::Miso,
            kkt: None,
            certified: true,
            degenerate: true,
        });
    }

    let a = 1.0 + rho * e2;
    let b = 2.0 + rho * r2 + rho * e2 + rho * rho * (r2 * e2 - cross * cross);
    let c = 1.0 + rho * r2;
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    let alpha = (b + disc) / (2.0 * a);
    let capacity = alpha.ln();

    let s = h_e.map(|z| z * C64::new(alpha.sqrt(), 0.0));
    let pairs = rank2_eigenpairs(h_r, &s)?;
    let top = pairs
        .iter()
        .max_by(|x, y| x.value.partial_cmp(&y.value).expect("finite eigenvalues"))
        .expect("at least one eigenpair");
    let q = InputCovariance::from_unit_vector(&top.vector);

    let pair = ChannelPair::miso(h_r, h_e)?;
    let kkt = kkt_residuals(&pair, snr, &q, DEFAULT_KKT_TOL);
    Ok(SecrecySolution {
        q,
        capacity_nats: capacity,
        solver: SolverKind::Miso,
        kkt: Some(kkt),
        certified: true,
        degenerate: false,
    })
}

/// Top eigenpair of the pencil `(I + S_E)^{-1}(I + S_R)` via the Hermitian
/// reduction `L^{-1}(I + S_R)L^{-†}` with `I + S_E = LL†`.
fn pencil_top(s_r: &HermitianMatrix, s_e: &HermitianMatrix) -> (f64, CVector) {
    let n = s_r.dim();
    let i = CMatrix::identity(n, n);
    let a = &i + s_r.as_matrix();
    let b = &i + s_e.as_matrix();
    let chol = nalgebra::linalg::Cholesky::new(b).expect("I + S_E is positive definite");
    let l = chol.l();
    let y = l
        .solve_lower_triangular(&a)
        .expect("triangular solve with PD factor");
    let reduced = l
        .solve_lower_triangular(&y.adjoint())
        .expect("triangular solve with PD factor");
    let top = HermitianMatrix::symmetrize(reduced).top_eigenpair();
    let u = l
        .adjoint()
        .solve_upper_triangular(&top.vector)
        .expect("triangular solve with PD factor");
    (top.value, crate::hermitian::canonicalize_phase(u))
}

/// Best rank-one covariance `u°u°†` with `u°` the top pencil eigenvector.
/// Certified optimal when `n_t = 2` with a non-PD difference, or when the
/// difference Gram has exactly one positive eigenvalue; otherwise the result
/// is a lower bound.
pub fn solve_rank_one_general(pair: &ChannelPair, snr: Snr) -> Result<SecrecySolution, SolverError> {
    let (s_r, s_e) = pair.grams(snr);
    let (lambda, u) = pencil_top(&s_r, &s_e);
    let q = InputCovariance::from_unit_vector(&u);
    let capacity = lambda.ln();

    let class = pair.difference_class();
    let certified = (pair.n_t() == 2 && class.tag != DefinitenessTag::PositiveDefinite)
        || class.tag == DefinitenessTag::IndefiniteOnePositive;
    let kkt = kkt_residuals(pair, snr, &q, DEFAULT_KKT_TOL);
    Ok(SecrecySolution {
        q,
        capacity_nats: capacity,
        solver: SolverKind::RankOneGeneral,
        kkt: Some(kkt),
        certified,
        degenerate: false,
    })
}

/// Explicit `n_T = 2` secrecy-capacity formula in terms of the Gram entries,
/// valid in the non-PD-difference regime where the optimum is rank one.
pub fn cs_closed_form_2x2(pair: &ChannelPair, snr: Snr) -> Result<f64, SolverError> {
    if pair.n_t() != 2 {
        return Err(SolverError::NotApplicable(format!(
            "requires n_t = 2, got {}",
            pair.n_t()
        )));
    }
    if pair.difference_class().tag == DefinitenessTag::PositiveDefinite {
        return Err(SolverError::NotApplicable(
            "difference Gram is positive definite; optimum may have full rank".into(),
        ));
    }
    let rho = snr.linear();
    let gram_e = pair.h_e().adjoint() * pair.h_e();
    let gram_r = pair.h_r().adjoint() * pair.h_r();
    let (a1, c1) = (gram_e[(0, 0)].re, gram_e[(1, 1)].re);
    let b1 = gram_e[(0, 1)];
    let (a2, c2) = (gram_r[(0, 0)].re, gram_r[(1, 1)].re);
    let b2 = gram_r[(0, 1)];

    let a_term = a1 * c2 + a2 * c1 - 2.0 * (b1 * b2.conj()).re
        + (a1 + a2 + c1 + c2) / rho
        + 2.0 / (rho * rho);
    let b1_term = (C64::new(a2 * c1 + (a2 + c1) / rho + 1.0 / (rho * rho), 0.0)
        - b1 * b2.conj())
        * (C64::new(a1 * c2 + (a1 + c2) / rho + 1.0 / (rho * rho), 0.0) - b1.conj() * b2);
    let b2_term = (b2 * C64::new(c1, 0.0) - b1 * C64::new(c2, 0.0)
        + (b2 - b1) / C64::new(rho, 0.0))
        * (b2.conj() * C64::new(a1, 0.0) - b1.conj() * C64::new(a2, 0.0)
            + (b2.conj() - b1.conj()) / C64::new(rho, 0.0));
    let radicand = a_term * a_term - 4.0 * (b1_term - b2_term).re;
    let denom = (1.0 / rho + a1) * (1.0 / rho + c1) - b1.norm_sqr();
    Ok(((a_term + radicand.max(0.0).sqrt()) / (2.0 * denom)).ln())
}

/// Real roots of `lead·x² + lin·x + konst = 0`, degenerating to the linear
/// solution when the quadratic coefficient vanishes.
fn real_roots(lead: f64, lin: f64, konst: f64) -> Vec<f64> {
    let scale = lead.abs().max(lin.abs()).max(konst.abs()).max(1.0);
    if lead.abs() < 1e-14 * scale {
        if lin.abs() < 1e-14 * scale {
            return vec![];
        }
        return vec![-konst / lin];
    }
    let disc = lin * lin - 4.0 * lead * konst;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    vec![(-lin + sq) / (2.0 * lead), (-lin - sq) / (2.0 * lead)]
}

/// Full-rank candidate for `n_T = 2` with `S_R − S_E ≻ 0`. Returns `None`
/// when neither quadratic root yields a feasible `Q ≻ 0`, which signals a
/// low-rank optimum.
pub fn solve_2x2_full_rank_candidate(
    pair: &ChannelPair,
    snr: Snr,
) -> Result<Option<SecrecySolution>, SolverError> {
    if pair.n_t() != 2 {
        return Err(SolverError::NotApplicable(format!(
            "requires n_t = 2, got {}",
            pair.n_t()
        )));
    }
    if pair.difference_class().tag != DefinitenessTag::PositiveDefinite {
        return Err(SolverError::NotApplicable(
            "requires S_R − S_E positive definite".into(),
        ));
    }
    let (s_r, s_e) = pair.grams(snr);
    // S_R = S_E + PD difference, so S_R is always invertible here.
    let s_r_inv = s_r
        .as_matrix()
        .clone()
        .try_inverse()
        .expect("S_R is positive definite");
    let se_eigs = s_e.eigenvalues();
    let se_tol = 1e-10 * se_eigs[0].abs().max(1.0);
    let se_rank = se_eigs.iter().filter(|&&v| v > se_tol).count();

    let feas_tol = 1e-10;
    let mut candidates: Vec<(InputCovariance, SolverKind)> = Vec::new();

    if se_rank == 2 {
        // Case a: both Grams invertible.
        let s_e_inv = s_e
            .as_matrix()
            .clone()
            .try_inverse()
            .expect("S_E has full rank");
        let half = C64::new(0.5, 0.0);
        let d_mat = HermitianMatrix::symmetrize((&s_e_inv - &s_r_inv).map(|z| z * half));
        let (d_vals, u1) = d_mat.eigen_descending();
        let (d1, d2) = (d_vals[0], d_vals[1]);
        let c_mat =
            HermitianMatrix::symmetrize(u1.adjoint() * (&s_e_inv + &s_r_inv).map(|z| z * half) * &u1);
        let tr_c = c_mat.trace();
        let roots = real_roots(
            d1 / d2 - 1.0,
            2.0 * (1.0 + tr_c),
            d1 * (d1 - d2) - (1.0 + tr_c) * (1.0 + tr_c),
        );
        for q2 in roots {
            let q1 = 1.0 + tr_c - q2;
            let q_hat = HermitianMatrix::symmetrize(
                CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                    C64::new(q1, 0.0),
                    C64::new(q2, 0.0),
                ])) - c_mat.as_matrix(),
            );
            if q_hat.lambda_min() <= feas_tol {
                continue;
            }
            let q_full = HermitianMatrix::symmetrize(&u1 * q_hat.as_matrix() * u1.adjoint());
            if let Ok(q) = InputCovariance::new(q_full) {
                candidates.push((q, SolverKind::TwoAntennaFullRankA));
            }
        }
    } else {
        // Case b: S_E has rank one (or is negligible, λ_e → 0).
        let (se_vals, u_e) = s_e.eigen_descending();
        let lambda_e = se_vals[0].max(0.0);
        let s_breve = HermitianMatrix::symmetrize(u_e.adjoint() * &s_r_inv * &u_e);
        let s11 = s_breve.as_matrix()[(0, 0)].re;
        let tr_s = s_breve.trace();
        let roots = real_roots(
            lambda_e,
            2.0 * (1.0 - s11 * lambda_e),
            -(1.0 - s11 * lambda_e) * (1.0 + tr_s),
        );
        for q1 in roots {
            let q2 = 1.0 + tr_s - q1;
            let q_breve = HermitianMatrix::symmetrize(
                CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                    C64::new(q1, 0.0),
                    C64::new(q2, 0.0),
                ])) - s_breve.as_matrix(),
            );
            if q_breve.lambda_min() <= feas_tol {
                continue;
            }
            let q_full = HermitianMatrix::symmetrize(&u_e * q_breve.as_matrix() * u_e.adjoint());
            if let Ok(q) = InputCovariance::new(q_full) {
                candidates.push((q, SolverKind::TwoAntennaFullRankB));
            }
        }
    }

    let best = candidates
        .into_iter()
        .map(|(q, kind)| {
            let rate = secrecy_rate(pair, snr, &q);
            (q, kind, rate)
        })
        .max_by(|a, b| a.2.partial_cmp(&b.2).expect("finite rates"));
    Ok(best.map(|(q, solver, capacity_nats)| {
        let kkt = kkt_residuals(pair, snr, &q, DEFAULT_KKT_TOL);
        SecrecySolution {
            q,
            capacity_nats,
            solver,
            kkt: Some(kkt),
            certified: false,
            degenerate: false,
        }
    }))
}

/// Two-antenna dispatcher: certified rank-one solution when the difference
/// is not positive definite, otherwise the better of the rank-one and
/// full-rank candidates.
pub fn solve_2x2(pair: &ChannelPair, snr: Snr) -> Result<SecrecySolution, SolverError> {
    if pair.n_t() != 2 {
        return Err(SolverError::NotApplicable(format!(
            "requires n_t = 2, got {}",
            pair.n_t()
        )));
    }
    if !pair.positivity_test() {
        return Err(SolverError::NotApplicable(
            "difference Gram is negative semi-definite; the secrecy capacity is zero".into(),
        ));
    }
    let class = pair.difference_class();
    if class.tag != DefinitenessTag::PositiveDefinite {
        return solve_rank_one_general(pair, snr);
    }
    let rank_one = solve_rank_one_general(pair, snr)?;
    let full_rank = solve_2x2_full_rank_candidate(pair, snr)?;
    let winner = match full_rank {
        Some(fr) if fr.capacity_nats > rank_one.capacity_nats => fr,
        _ => rank_one,
    };
    let kkt = kkt_residuals(pair, snr, &winner.q, DEFAULT_KKT_TOL);
    Ok(SecrecySolution {
        solver: SolverKind::TwoAntennaDispatch,
        kkt: Some(kkt),
        certified: false,
        ..winner
    })
}

/// Rank test `g(ρ)` for `n_T = 2` with a PD difference Gram: negative values
/// certify a rank-two optimum. Uses the unfolded Grams `S₁, S₂` and the
/// expanded rational form.
pub fn rank_test_g(pair: &ChannelPair, snr: Snr) -> Result<f64, SolverError> {
    if pair.n_t() != 2 {
        return Err(SolverError::NotApplicable(format!(
            "requires n_t = 2, got {}",
            pair.n_t()
        )));
    }
    if pair.difference_class().tag != DefinitenessTag::PositiveDefinite {
        return Err(SolverError::NotApplicable(
            "requires S₁ − S₂ positive definite".into(),
        ));
    }
    let rho = snr.linear();
    let s1 = HermitianMatrix::symmetrize(pair.h_r().adjoint() * pair.h_r());
    let s2 = HermitianMatrix::symmetrize(pair.h_e().adjoint() * pair.h_e());
    // u₀ from the SNR-folded pencil (identical to the rank-one beamformer).
    let (s_r, s_e) = pair.grams(snr);
    let (_, u0) = pencil_top(&s_r, &s_e);

    let rational = |s: &HermitianMatrix| {
        let s_mat = s.as_matrix();
        let s_sq = s_mat * s_mat;
        let numer = (u0.adjoint() * (s_mat.map(|z| z * C64::new(2.0, 0.0)) + s_sq.map(|z| z * C64::new(rho, 0.0))) * &u0)[(0, 0)].re;
        let denom = 1.0 + rho * (u0.adjoint() * s_mat * &u0)[(0, 0)].re;
        numer / denom
    };
    Ok(rational(&s1) - rational(&s2) - (s1.trace() - s2.trace()))
}

/// `S₀ = S₁(I+ρu₀u₀†S₁)^{-1} − S₂(I+ρu₀u₀†S₂)^{-1}` evaluated at the
/// rank-one beamformer; exposed for the eigenvector property of the rank test.
pub fn rank_test_s0(pair: &ChannelPair, snr: Snr) -> Result<(HermitianMatrix, CVector), SolverError> {
    if pair.n_t() != 2 {
        return Err(SolverError::NotApplicable("requires n_t = 2".into()));
    }
    let rho = snr.linear();
    let (s_r, s_e) = pair.grams(snr);
    let (_, u0) = pencil_top(&s_r, &s_e);
    let q = InputCovariance::from_unit_vector(&u0);
    let n = pair.n_t();
    let term = |s: &HermitianMatrix| {
        let m = CMatrix::identity(n, n)
            + q.matrix().as_matrix().map(|z| z * C64::new(rho, 0.0)) * s.as_matrix();
        // S (I + ρQS)^{-1} = (I + ρSQ)^{-1} S, solved as a linear system.
        m.adjoint()
            .lu()
            .solve(s.as_matrix())
            .expect("I + ρSQ is nonsingular")
    };
    let s1 = HermitianMatrix::symmetrize(pair.h_r().adjoint() * pair.h_r());
    let s2 = HermitianMatrix::symmetrize(pair.h_e().adjoint() * pair.h_e());
    let s0 = HermitianMatrix::symmetrize(term(&s1) - term(&s2));
    Ok((s0, u0))
}
