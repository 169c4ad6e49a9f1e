//! Channel-pair representation, secrecy-rate evaluation and the
//! gradient-like matrix `Θ`.

use thiserror::Error;

use crate::hermitian::{self, DefinitenessClass, HermitianMatrix};
use crate::{C64, CMatrix, CVector};

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("channel matrices have inconsistent transmit dimensions: {n_t_r} vs {n_t_e}")]
    DimensionMismatch { n_t_r: usize, n_t_e: usize },
    #[error("channel matrices contain non-finite entries")]
    NonFinite,
    #[error("H_R†H_R − H_E†H_E is numerically zero; the secrecy rate is identically zero")]
    ZeroDifference,
    #[error("determinant argument singular to working precision")]
    NumericalFailure,
    #[error("covariance is not feasible: {0}")]
    InfeasibleCovariance(String),
}

/// Linear signal-to-noise ratio `ρ = P/σ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snr {
    rho: f64,
}

impl Snr {
    pub fn from_linear(rho: f64) -> Self {
        assert!(rho > 0.0 && rho.is_finite(), "SNR must be positive");
        Self { rho }
    }

    pub fn from_db(db: f64) -> Self {
        Self::from_linear(10f64.powf(db / 10.0))
    }

    pub fn linear(&self) -> f64 {
        self.rho
    }

    pub fn db(&self) -> f64 {
        10.0 * self.rho.log10()
    }
}

/// Legitimate and eavesdropper channel matrices with consistent dimensions.
#[derive(Debug, Clone)]
pub struct ChannelPair {
    h_r: CMatrix,
    h_e: CMatrix,
    normalized: bool,
}

impl ChannelPair {
    /// Stores the pair, optionally scaling both matrices by the common factor
    /// `√(n_t / Tr(H_R†H_R))` so the legitimate Gram has trace `n_t`. The
    /// common factor keeps the problem a pure SNR reparameterization.
    pub fn new(h_r: CMatrix, h_e: CMatrix, normalize: bool) -> Result<Self, ChannelError> {
        if h_r.ncols() != h_e.ncols() {
            return Err(ChannelError::DimensionMismatch {
                n_t_r: h_r.ncols(),
                n_t_e: h_e.ncols(),
            });
        }
        if h_r.iter().chain(h_e.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(ChannelError::NonFinite);
        }
        let (h_r, h_e) = if normalize {
            let trace = (h_r.adjoint() * &h_r).trace().re;
            let factor = C64::new((h_r.ncols() as f64 / trace).sqrt(), 0.0);
            (h_r.map(|z| z * factor), h_e.map(|z| z * factor))
        } else {
            (h_r, h_e)
        };
        let diff = h_r.adjoint() * &h_r - h_e.adjoint() * &h_e;
        if diff.norm() < 1e-12 {
            return Err(ChannelError::ZeroDifference);
        }
        Ok(Self {
            h_r,
            h_e,
            normalized: normalize,
        })
    }

    /// MISO pair from channel row vectors.
    pub fn miso(h_r: &CVector, h_e: &CVector) -> Result<Self, ChannelError> {
        let n_t = h_r.len();
        Self::new(
            CMatrix::from_fn(1, n_t, |_, j| h_r[j].conj()),
            CMatrix::from_fn(1, n_t, |_, j| h_e[j].conj()),
            false,
        )
    }

    pub fn n_t(&self) -> usize {
        self.h_r.ncols()
    }

    pub fn n_r(&self) -> usize {
        self.h_r.nrows()
    }

    pub fn n_e(&self) -> usize {
        self.h_e.nrows()
    }

    pub fn h_r(&self) -> &CMatrix {
        &self.h_r
    }

    pub fn h_e(&self) -> &CMatrix {
        &self.h_e
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Difference Gram `H_R†H_R − H_E†H_E` (no SNR folded in).
    pub fn gram_difference(&self) -> HermitianMatrix {
        HermitianMatrix::symmetrize(
            self.h_r.adjoint() * &self.h_r - self.h_e.adjoint() * &self.h_e,
        )
    }

    /// SNR-folded Grams `S_R = ρ H_R†H_R`, `S_E = ρ H_E†H_E`.
    pub fn grams(&self, snr: Snr) -> (HermitianMatrix, HermitianMatrix) {
        let rho = C64::new(snr.linear(), 0.0);
        let s_r = HermitianMatrix::symmetrize((self.h_r.adjoint() * &self.h_r).map(|z| z * rho));
        let s_e = HermitianMatrix::symmetrize((self.h_e.adjoint() * &self.h_e).map(|z| z * rho));
        (s_r, s_e)
    }

    /// Classification of the difference Gram at its scale-relative tolerance.
    pub fn difference_class(&self) -> DefinitenessClass {
        let diff = self.gram_difference();
        let tol = diff.default_class_tol();
        hermitian::classify_definiteness(&diff, tol)
    }

    /// True iff the secrecy capacity is positive: the difference Gram is not
    /// negative semi-definite.
    pub fn positivity_test(&self) -> bool {
        let class = self.difference_class();
        class.is_indefinite() || class.is_positive_semidefinite()
    }
}

/// PSD trace-1 input covariance on the feasible set Ω.
#[derive(Debug, Clone)]
pub struct InputCovariance {
    q: HermitianMatrix,
}

impl InputCovariance {
    /// Validates `Q ⪰ −1e-9` and `|Tr(Q) − 1| < 1e-9`.
    pub fn new(q: HermitianMatrix) -> Result<Self, ChannelError> {
        let min_eig = q.lambda_min();
        if min_eig < -1e-9 {
            return Err(ChannelError::InfeasibleCovariance(format!(
                "smallest eigenvalue {min_eig:.3e} below -1e-9"
            )));
        }
        let trace = q.trace();
        if (trace - 1.0).abs() > 1e-9 {
            return Err(ChannelError::InfeasibleCovariance(format!(
                "trace {trace} differs from 1"
            )));
        }
        Ok(Self { q })
    }

    /// Rank-one covariance `u u† / ‖u‖²`.
    pub fn from_unit_vector(u: &CVector) -> Self {
        let v = u.scale(1.0 / u.norm());
        Self {
            q: HermitianMatrix::outer(&v),
        }
    }

    /// Uniform covariance `I/n`.
    pub fn uniform(n: usize) -> Self {
        Self {
            q: HermitianMatrix::from_diagonal(&vec![1.0 / n as f64; n]),
        }
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.q
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.q.eigenvalues()
    }

    /// Numerical rank: eigenvalues above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.eigenvalues().iter().filter(|&&v| v > threshold).count()
    }
}

/// Secrecy rate `ln det(I + ρ H_R Q H_R†) − ln det(I + ρ H_E Q H_E†)` in nats.
/// May be negative for suboptimal `Q`.
pub fn secrecy_rate(pair: &ChannelPair, snr: Snr, q: &InputCovariance) -> f64 {
    log_det_term(pair.h_r(), snr, q) - log_det_term(pair.h_e(), snr, q)
}

fn log_det_term(h: &CMatrix, snr: Snr, q: &InputCovariance) -> f64 {
    let rho = C64::new(snr.linear(), 0.0);
    let m = CMatrix::identity(h.nrows(), h.nrows())
        + (h * q.matrix().as_matrix() * h.adjoint()).map(|z| z * rho);
    // I + ρ H Q H† is Hermitian PD for feasible Q; the LU determinant of the
    // symmetrized form is real positive.
    let det = HermitianMatrix::symmetrize(m).into_matrix().lu().determinant();
    det.re.ln()
}

/// The gradient-like matrix `Θ = S_R(I + QS_R)^{-1} − S_E(I + QS_E)^{-1}`,
/// computed with linear solves against `(I + S Q)` rather than explicit
/// inverses.
pub fn theta(pair: &ChannelPair, snr: Snr, q: &InputCovariance) -> HermitianMatrix {
    let (s_r, s_e) = pair.grams(snr);
    let t = solve_gram_term(&s_r, q) - solve_gram_term(&s_e, q);
    HermitianMatrix::symmetrize(t)
}

/// `S (I + Q S)^{-1}` via `(I + S Q) X = S`, using the push-through identity
/// `S (I + Q S)^{-1} = (I + S Q)^{-1} S`.
fn solve_gram_term(s: &HermitianMatrix, q: &InputCovariance) -> CMatrix {
    let n = s.dim();
    let m = CMatrix::identity(n, n) + s.as_matrix() * q.matrix().as_matrix();
    m.lu()
        .solve(s.as_matrix())
        .expect("I + SQ is nonsingular for feasible Q")
}
