//! Complex Hermitian matrix values and eigen-analysis primitives.
//!
//! Everything downstream (channel Grams, `Θ`, covariance iterates) is a
//! Hermitian matrix; this module owns construction, classification by
//! definiteness, PSD projection/square root, and the closed-form eigenpairs
//! of a rank-two difference of outer products `rr† − ss†`.

use nalgebra::linalg::SymmetricEigen;
use thiserror::Error;

use crate::{C64, CMatrix, CVector};

/// Relative asymmetry above which construction is rejected.
const ASYMMETRY_REL_TOL: f64 = 1e-10;
/// Collinearity threshold for the rank-two eigenpair case split.
const COLLINEAR_REL_TOL: f64 = 1e-10;
/// Orthogonality threshold for the rank-two eigenpair case split.
const ORTHOGONAL_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum HermitianError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix asymmetry {asymmetry:.3e} exceeds {tol:.3e} relative to Frobenius norm")]
    Asymmetric { asymmetry: f64, tol: f64 },
    #[error("input vector is numerically zero")]
    ZeroVector,
    #[error("rr† − ss† is numerically zero")]
    DegenerateDifference,
    #[error("matrix is not positive semi-definite: eigenvalue {eigenvalue:.3e} below tolerance")]
    NotPsd { eigenvalue: f64 },
}

/// Square complex Hermitian matrix. Symmetrized on construction so that
/// `entries[i][j] == conj(entries[j][i])` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    data: CMatrix,
}

/// Sign pattern of the spectrum under a tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefinitenessTag {
    PositiveDefinite,
    PositiveSemiDefiniteSingular,
    Indefinite,
    /// Indefinite with exactly one eigenvalue above the tolerance.
    IndefiniteOnePositive,
    NegativeSemiDefinite,
    Zero,
}

/// Classification outcome: tag plus the spectrum it was derived from.
#[derive(Debug, Clone)]
pub struct DefinitenessClass {
    pub tag: DefinitenessTag,
    /// Eigenvalues sorted descending.
    pub eigenvalues: Vec<f64>,
    pub tolerance_used: f64,
}

impl DefinitenessClass {
    /// True when the matrix is indefinite (at least one eigenvalue on each
    /// side of the tolerance band), regardless of the one-positive refinement.
    pub fn is_indefinite(&self) -> bool {
        matches!(
            self.tag,
            DefinitenessTag::Indefinite | DefinitenessTag::IndefiniteOnePositive
        )
    }

    /// True for positive semi-definite spectra (strictly definite or singular).
    pub fn is_positive_semidefinite(&self) -> bool {
        matches!(
            self.tag,
            DefinitenessTag::PositiveDefinite | DefinitenessTag::PositiveSemiDefiniteSingular
        )
    }
}

/// Eigenvalue together with a unit-norm, phase-canonicalized eigenvector.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: CVector,
}

impl HermitianMatrix {
    /// Builds from an arbitrary square complex matrix, symmetrizing
    /// `M ← (M + M†)/2`. Fails if the asymmetry exceeds `1e-10` of the
    /// Frobenius norm.
    pub fn new(m: CMatrix) -> Result<Self, HermitianError> {
        if m.nrows() != m.ncols() {
            return Err(HermitianError::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let adjoint = m.adjoint();
        let asym = (&m - &adjoint).norm() / 2.0;
        let scale = m.norm().max(f64::MIN_POSITIVE);
        if asym > ASYMMETRY_REL_TOL * scale {
            return Err(HermitianError::Asymmetric {
                asymmetry: asym / scale,
                tol: ASYMMETRY_REL_TOL,
            });
        }
        Ok(Self::symmetrize(m))
    }

    /// Symmetrizes unconditionally. For matrices that are Hermitian by
    /// construction (products like `A A†`, sums of Hermitian terms) where
    /// only roundoff drift is possible.
    pub fn symmetrize(m: CMatrix) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "symmetrize requires a square matrix");
        let adjoint = m.adjoint();
        Self {
            data: (m + adjoint).scale(0.5),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            data: CMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: CMatrix::zeros(dim, dim),
        }
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Self { data: m }
    }

    /// Outer product `v v†` (always Hermitian PSD).
    pub fn outer(v: &CVector) -> Self {
        Self::symmetrize(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_matrix(self) -> CMatrix {
        self.data
    }

    pub fn trace(&self) -> f64 {
        self.data.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm()
    }

    /// Eigenvalues and eigenvectors sorted by descending eigenvalue.
    /// Eigenvectors are phase-canonicalized columns.
    pub fn eigen_descending(&self) -> (Vec<f64>, CMatrix) {
        let eig = SymmetricEigen::new(self.data.clone());
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .expect("eigenvalues are finite")
        });
        let mut values = Vec::with_capacity(n);
        let mut vectors = CMatrix::zeros(n, n);
        for (k, &i) in order.iter().enumerate() {
            values.push(eig.eigenvalues[i]);
            let v = canonicalize_phase(eig.eigenvectors.column(i).into_owned());
            vectors.set_column(k, &v);
        }
        (values, vectors)
    }

    /// Eigenvalues only, sorted descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.data.clone());
        let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        v.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
        v
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues().last().expect("non-empty matrix")
    }

    /// Top eigenpair (largest eigenvalue), phase-canonicalized. Ties are
    /// broken by the order the eigensolver reports after the descending sort.
    pub fn top_eigenpair(&self) -> EigenPair {
        let (values, vectors) = self.eigen_descending();
        EigenPair {
            value: values[0],
            vector: vectors.column(0).into_owned(),
        }
    }

    /// Scale-relative default tolerance for definiteness classification:
    /// `1e-9 · max(1, spectral radius)`.
    pub fn default_class_tol(&self) -> f64 {
        let radius = self
            .eigenvalues()
            .iter()
            .fold(0.0f64, |acc, &v| acc.max(v.abs()));
        1e-9 * radius.max(1.0)
    }

    /// `Tr(A B)` for two Hermitian matrices (real).
    pub fn trace_product(&self, other: &HermitianMatrix) -> f64 {
        (&self.data * &other.data).trace().re
    }
}

impl std::ops::Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            data: &self.data + &rhs.data,
        }
    }
}

impl std::ops::Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            data: &self.data - &rhs.data,
        }
    }
}

/// Rotates the global phase so the largest-magnitude component is real and
/// nonnegative, then normalizes to unit length. Idempotent.
pub fn canonicalize_phase(v: CVector) -> CVector {
    let norm = v.norm();
    if norm == 0.0 {
        return v;
    }
    let mut idx = 0;
    let mut best = 0.0;
    for (i, z) in v.iter().enumerate() {
        let a = z.norm();
        if a > best {
            best = a;
            idx = i;
        }
    }
    let pivot = v[idx];
    let phase = pivot.conj() / pivot.norm();
    v.map(|z| z * phase / norm)
}

/// Counts eigenvalues above `tol` and below `−tol` and maps the sign pattern
/// to a [`DefinitenessTag`]. Eigenvalues inside `[−tol, tol]` count as zero.
pub fn classify_definiteness(m: &HermitianMatrix, tol: f64) -> DefinitenessClass {
    assert!(tol > 0.0, "tolerance must be positive");
    let eigenvalues = m.eigenvalues();
    let pos = eigenvalues.iter().filter(|&&v| v > tol).count();
    let neg = eigenvalues.iter().filter(|&&v| v < -tol).count();
    let zero = eigenvalues.len() - pos - neg;
    let tag = if pos > 0 && neg > 0 {
        if pos == 1 {
            DefinitenessTag::IndefiniteOnePositive
        } else {
            DefinitenessTag::Indefinite
        }
    } else if pos > 0 {
        if zero > 0 {
            DefinitenessTag::PositiveSemiDefiniteSingular
        } else {
            DefinitenessTag::PositiveDefinite
        }
    } else if neg > 0 {
        DefinitenessTag::NegativeSemiDefinite
    } else {
        DefinitenessTag::Zero
    };
    DefinitenessClass {
        tag,
        eigenvalues,
        tolerance_used: tol,
    }
}

/// Nonzero eigenpairs of `rr† − ss†` in closed form.
///
/// Three regimes, split by `|r†s|` relative to `‖r‖‖s‖`: collinear vectors
/// give a single pair, orthogonal vectors give the two trivial pairs, and the
/// general case uses the quadratic combination coefficients with one positive
/// and one negative eigenvalue. The collinear band is wide (`1 − 1e-10`)
/// since the general-case formulas divide by `|r†s|` and degrade there.
pub fn rank2_eigenpairs(r: &CVector, s: &CVector) -> Result<Vec<EigenPair>, HermitianError> {
    let r_norm = r.norm();
    let s_norm = s.norm();
    if r_norm == 0.0 || s_norm == 0.0 {
        return Err(HermitianError::ZeroVector);
    }
    let rs = (r.adjoint() * s)[(0, 0)];
    let rs_abs = rs.norm();
    let r2 = r_norm * r_norm;
    let s2 = s_norm * s_norm;

    if rs_abs > (1.0 - COLLINEAR_REL_TOL) * r_norm * s_norm {
        // r = ξ s: single nonzero eigenvalue (|ξ|² − 1)‖s‖².
        let value = r2 - s2;
        if value.abs() < 1e-12 * r2.max(s2) {
            return Err(HermitianError::DegenerateDifference);
        }
        return Ok(vec![EigenPair {
            value,
            vector: canonicalize_phase(s.clone()),
        }]);
    }

    if rs_abs < ORTHOGONAL_REL_TOL * r_norm * s_norm {
        return Ok(vec![
            EigenPair {
                value: r2,
                vector: canonicalize_phase(r.clone()),
            },
            EigenPair {
                value: -s2,
                vector: canonicalize_phase(s.clone()),
            },
        ]);
    }

    // General case: eigenvectors are combinations r + |c| e^{i(π−φ)} s with
    // φ = arg(r†s).
    let disc = ((r2 + s2) * (r2 + s2) - 4.0 * rs_abs * rs_abs).max(0.0).sqrt();
    let c2_abs = (r2 + s2 - disc) / (2.0 * rs_abs);
    let c4_abs = (r2 + s2 + disc) / (2.0 * rs_abs);
    let eta1 = r2 - c2_abs * rs_abs;
    let eta2 = r2 - c4_abs * rs_abs;
    let phi = rs.arg();
    let rotate = C64::from_polar(1.0, std::f64::consts::PI - phi);
    let e1 = r + s.scale(c2_abs).map(|z| z * rotate);
    let e2 = r + s.scale(c4_abs).map(|z| z * rotate);
    Ok(vec![
        EigenPair {
            value: eta1,
            vector: canonicalize_phase(e1),
        },
        EigenPair {
            value: eta2,
            vector: canonicalize_phase(e2),
        },
    ])
}

/// Clips negative eigenvalues to zero. Returns the repaired matrix and the
/// magnitude of the most negative eigenvalue that was clipped (0 when the
/// input was already PSD); callers decide whether a large repair is an error.
pub fn psd_project(m: &HermitianMatrix) -> (HermitianMatrix, f64) {
    let (values, vectors) = m.eigen_descending();
    let max_clip = values.iter().fold(0.0f64, |acc, &v| acc.max(-v));
    if max_clip == 0.0 {
        return (m.clone(), 0.0);
    }
    let n = m.dim();
    let mut d = CMatrix::zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        d[(i, i)] = C64::new(v.max(0.0), 0.0);
    }
    let repaired = &vectors * d * vectors.adjoint();
    (HermitianMatrix::symmetrize(repaired), max_clip)
}

/// The unique PSD square root. Eigenvalues below zero are clipped first; a
/// clip larger than `1e-10` (scale-relative) is an error.
pub fn psd_sqrt(m: &HermitianMatrix) -> Result<HermitianMatrix, HermitianError> {
    let (values, vectors) = m.eigen_descending();
    let scale = values.iter().fold(1.0f64, |acc, &v| acc.max(v.abs()));
    let n = m.dim();
    let mut d = CMatrix::zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        if v < -1e-10 * scale {
            return Err(HermitianError::NotPsd { eigenvalue: v });
        }
        d[(i, i)] = C64::new(v.max(0.0).sqrt(), 0.0);
    }
    Ok(HermitianMatrix::symmetrize(&vectors * d * vectors.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand::rngs::StdRng;
    use rand_distr::{Distribution, StandardNormal};

    pub(crate) fn random_complex_vector(rng: &mut StdRng, n: usize) -> CVector {
        CVector::from_fn(n, |_, _| {
            C64::new(
                StandardNormal.sample(rng),
                StandardNormal.sample(rng),
            )
        })
    }

    fn random_hermitian(rng: &mut StdRng, n: usize) -> HermitianMatrix {
        let g = CMatrix::from_fn(n, n, |_, _| {
            C64::new(
                StandardNormal.sample(rng),
                StandardNormal.sample(rng),
            )
        });
        HermitianMatrix::symmetrize(g)
    }

    #[test]
    fn construction_rejects_asymmetry() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(HermitianError::Asymmetric { .. })
        ));
    }

    #[test]
    fn classify_diagonal_cases() {
        let pd = HermitianMatrix::from_diagonal(&[1.0, 2.0]);
        assert_eq!(
            classify_definiteness(&pd, 1e-9).tag,
            DefinitenessTag::PositiveDefinite
        );
        let indef = HermitianMatrix::from_diagonal(&[1.0, -1.0]);
        let class = classify_definiteness(&indef, 1e-9);
        assert_eq!(class.tag, DefinitenessTag::IndefiniteOnePositive);
        assert!(class.is_indefinite());
        let psd = HermitianMatrix::from_diagonal(&[1.0, 0.0]);
        assert_eq!(
            classify_definiteness(&psd, 1e-9).tag,
            DefinitenessTag::PositiveSemiDefiniteSingular
        );
        let nsd = HermitianMatrix::from_diagonal(&[-1.0, 0.0]);
        assert_eq!(
            classify_definiteness(&nsd, 1e-9).tag,
            DefinitenessTag::NegativeSemiDefinite
        );
    }

    #[test]
    fn classify_invariant_under_unitary_conjugation() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_hermitian(&mut rng, 4);
            // Unitary factor from the eigendecomposition of another matrix.
            let (_, u) = random_hermitian(&mut rng, 4).eigen_descending();
            let conj = HermitianMatrix::symmetrize(&u * m.as_matrix() * u.adjoint());
            let a = classify_definiteness(&m, 1e-9);
            let b = classify_definiteness(&conj, 1e-9);
            assert_eq!(a.tag, b.tag);
            for (x, y) in a.eigenvalues.iter().zip(b.eigenvalues.iter()) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-10 * m.frobenius_norm().max(1.0));
            }
        }
    }

    #[test]
    fn rank2_orthogonal_case() {
        let r = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let s = CVector::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        let pairs = rank2_eigenpairs(&r, &s).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_abs_diff_eq!(pairs[0].value, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pairs[1].value, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pairs[0].vector[0].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pairs[1].vector[1].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rank2_collinear_case() {
        let r = CVector::from_vec(vec![C64::new(2.0, 0.0), C64::new(0.0, 0.0)]);
        let s = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let pairs = rank2_eigenpairs(&r, &s).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_abs_diff_eq!(pairs[0].value, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn rank2_general_case_golden() {
        // r = (1,0), s = (1,1): spectrum of [[0,-1],[-1,-1]].
        let r = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let s = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        let pairs = rank2_eigenpairs(&r, &s).unwrap();
        let sqrt5 = 5.0f64.sqrt();
        assert_abs_diff_eq!(pairs[0].value, (sqrt5 - 1.0) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pairs[1].value, -(sqrt5 + 1.0) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn rank2_degenerate_difference() {
        let r = CVector::from_vec(vec![C64::new(0.0, 1.0)]);
        let s = CVector::from_vec(vec![C64::new(1.0, 0.0)]);
        assert!(matches!(
            rank2_eigenpairs(&r, &s),
            Err(HermitianError::DegenerateDifference)
        ));
    }

    #[test]
    fn rank2_matches_dense_eigensolver() {
        let mut rng = StdRng::seed_from_u64(42);
        for dim in 2..=6 {
            for _ in 0..100 {
                let r = random_complex_vector(&mut rng, dim);
                let s = random_complex_vector(&mut rng, dim);
                let m = HermitianMatrix::symmetrize(&r * r.adjoint() - &s * s.adjoint());
                let pairs = rank2_eigenpairs(&r, &s).unwrap();
                let scale = m.frobenius_norm().max(1.0);
                for p in &pairs {
                    let residual = (m.as_matrix() * &p.vector - p.vector.scale(p.value)).norm();
                    assert!(
                        residual < 1e-9 * scale,
                        "eigen residual {residual} for dim {dim}"
                    );
                    assert_abs_diff_eq!(p.vector.norm(), 1.0, epsilon = 1e-12);
                }
                if pairs.len() == 2 {
                    assert!(pairs[0].value > 0.0 && pairs[1].value < 0.0);
                }
                // Compare against dense nonzero spectrum.
                let dense: Vec<f64> = m
                    .eigenvalues()
                    .into_iter()
                    .filter(|v| v.abs() > 1e-9 * scale)
                    .collect();
                assert_eq!(dense.len(), pairs.len());
                let mut closed: Vec<f64> = pairs.iter().map(|p| p.value).collect();
                closed.sort_by(|a, b| b.partial_cmp(a).unwrap());
                for (d, c) in dense.iter().zip(closed.iter()) {
                    assert_abs_diff_eq!(d, c, epsilon = 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn psd_project_clips_and_reports() {
        let m = HermitianMatrix::from_diagonal(&[1.0, -1e-14]);
        let (p, clip) = psd_project(&m);
        assert!(p.eigenvalues().iter().all(|&v| v >= 0.0));
        assert_abs_diff_eq!(clip, 1e-14, epsilon = 1e-20);

        let already = HermitianMatrix::from_diagonal(&[2.0, 3.0]);
        let (p, clip) = psd_project(&already);
        assert_eq!(clip, 0.0);
        assert_abs_diff_eq!((&p - &already).frobenius_norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn psd_project_matches_dense_oracle() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_hermitian(&mut rng, 4);
            let (p, _) = psd_project(&m);
            // Oracle: U max(D,0) U† from a dense eigendecomposition.
            let (values, vectors) = m.eigen_descending();
            let mut d = CMatrix::zeros(4, 4);
            for (i, &v) in values.iter().enumerate() {
                d[(i, i)] = C64::new(v.max(0.0), 0.0);
            }
            let oracle = HermitianMatrix::symmetrize(&vectors * d * vectors.adjoint());
            assert!((&p - &oracle).frobenius_norm() < 1e-10 * m.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn psd_sqrt_roundtrip() {
        let m = HermitianMatrix::from_diagonal(&[4.0, 9.0]);
        let s = psd_sqrt(&m).unwrap();
        assert_abs_diff_eq!(s.as_matrix()[(0, 0)].re, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.as_matrix()[(1, 1)].re, 3.0, epsilon = 1e-12);

        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random_hermitian(&mut rng, 4);
            let psd = HermitianMatrix::symmetrize(g.as_matrix() * g.as_matrix().adjoint());
            let s = psd_sqrt(&psd).unwrap();
            let back = HermitianMatrix::symmetrize(s.as_matrix() * s.as_matrix());
            assert!(
                (&back - &psd).frobenius_norm() <= 1e-10 * psd.frobenius_norm().max(1.0),
                "sqrt roundtrip failed"
            );
        }
        assert!(matches!(
            psd_sqrt(&HermitianMatrix::from_diagonal(&[1.0, -1.0])),
            Err(HermitianError::NotPsd { .. })
        ));
    }

    #[test]
    fn phase_canonicalization_idempotent() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let v = random_complex_vector(&mut rng, 5);
            let c1 = canonicalize_phase(v);
            let c2 = canonicalize_phase(c1.clone());
            assert!((&c1 - &c2).norm() < 1e-14);
            // largest component real nonnegative
            let (idx, _) = c1
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .unwrap();
            assert!(c1[idx].im.abs() < 1e-14 && c1[idx].re >= 0.0);
        }
    }
}
