//! Secrecy capacity and optimal transmit covariance for Gaussian MIMO
//! wiretap channels under a trace power constraint.
//!
//! The crate provides:
//!
//! - [`hermitian`]: complex Hermitian matrix values and eigen-analysis,
//!   including closed-form eigenpairs of `rr† − ss†`;
//! - [`channel`]: the channel pair, secrecy rate, and the gradient-like
//!   matrix `Θ`;
//! - [`closed_form`]: closed-form solvers (MISO, rank-one regime, and the
//!   two-antenna transmitter case);
//! - [`kkt`]: multiplier-free optimality residuals;
//! - [`fixed_point`]: the fixed-point iteration over the feasible set;
//! - [`oracle`]: projected-gradient and rank-one-sampling reference
//!   solvers used for independent verification;
//! - [`io`]: the channel-file JSON schema consumed by the `wiretap` binary;
//! - [`fixtures`]: embedded example channel pairs.

pub mod channel;
pub mod closed_form;
pub mod fixed_point;
pub mod fixtures;
pub mod hermitian;
pub mod io;
pub mod kkt;
pub mod oracle;
#[doc(hidden)]
pub mod test_util;

pub use channel::{ChannelPair, InputCovariance, Snr};
pub use closed_form::{SecrecySolution, SolverKind};
pub use fixed_point::{FixedPointConfig, SolverReport};
pub use hermitian::{DefinitenessClass, DefinitenessTag, EigenPair, HermitianMatrix};
pub use kkt::KktReport;
pub use oracle::OracleConfig;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex vector.
pub type CVector = nalgebra::DVector<C64>;
