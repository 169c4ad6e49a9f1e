//! Seeded random instance generators shared by unit and integration tests.

use rand::Rng;
use rand::rngs::StdRng;
use rand_distr::{Distribution, StandardNormal};

use crate::channel::{ChannelPair, InputCovariance};
use crate::hermitian::HermitianMatrix;
use crate::{C64, CMatrix, CVector};

pub fn random_complex_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

pub fn random_complex_vector(rng: &mut StdRng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

pub fn random_channel_pair(rng: &mut StdRng, n_t: usize, n_r: usize, n_e: usize) -> ChannelPair {
    ChannelPair::new(
        random_complex_matrix(rng, n_r, n_t),
        random_complex_matrix(rng, n_e, n_t),
        false,
    )
    .expect("random pair is non-degenerate")
}

/// Random full-rank feasible covariance `GG†/Tr(GG†)`.
pub fn random_covariance(rng: &mut StdRng, n: usize) -> InputCovariance {
    let g = random_complex_matrix(rng, n, n);
    let gram = HermitianMatrix::symmetrize(&g * g.adjoint());
    let trace = gram.trace();
    InputCovariance::new(HermitianMatrix::symmetrize(
        gram.into_matrix().map(|z| z / trace),
    ))
    .expect("normalized Gram is feasible")
}

/// Draws 2x2 pairs until the SNR-folded difference Gram is positive definite.
pub fn random_pd_difference_2x2(rng: &mut StdRng) -> ChannelPair {
    loop {
        // Bias the legitimate channel stronger so PD differences are common.
        let h_r = random_complex_matrix(rng, 2, 2).map(|z| z * C64::new(2.0, 0.0));
        let h_e = random_complex_matrix(rng, 2, 2).map(|z| z * C64::new(0.4, 0.0));
        let pair = match ChannelPair::new(h_r, h_e, false) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if pair.difference_class().tag == crate::hermitian::DefinitenessTag::PositiveDefinite {
            return pair;
        }
    }
}

/// Draws 2x2 pairs whose difference Gram is indefinite.
pub fn random_indefinite_2x2(rng: &mut StdRng) -> ChannelPair {
    loop {
        let pair = match ChannelPair::new(
            random_complex_matrix(rng, 2, 2),
            random_complex_matrix(rng, 2, 2),
            false,
        ) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if pair.difference_class().is_indefinite() {
            return pair;
        }
    }
}

/// Draws instances in the one-positive-eigenvalue regime: single legitimate
/// antenna, full-rank eavesdropper Gram.
pub fn random_one_positive_instance(rng: &mut StdRng, n_t: usize) -> ChannelPair {
    loop {
        let pair = match ChannelPair::new(
            random_complex_matrix(rng, 1, n_t),
            random_complex_matrix(rng, n_t, n_t).map(|z| z * C64::new(0.5, 0.0)),
            false,
        ) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let class = pair.difference_class();
        if class.tag == crate::hermitian::DefinitenessTag::IndefiniteOnePositive {
            return pair;
        }
    }
}

/// Random MISO channel vectors of length `n_t`.
pub fn random_miso_vectors(rng: &mut StdRng, n_t: usize) -> (CVector, CVector) {
    let h_r = random_complex_vector(rng, n_t);
    let scale = rng.gen_range(0.2..1.5);
    let h_e = random_complex_vector(rng, n_t).map(|z| z * C64::new(scale, 0.0));
    (h_r, h_e)
}
