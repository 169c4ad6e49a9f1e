//! Closed-form eigenpairs of rr† − ss†: the difference of two outer
//! products has at most one positive and one negative eigenvalue, with
//! eigenvectors in span{r, s}. Compared against the dense eigensolver.
//!
//! Run with: `cargo run --example rank_two_eigen`

use mimo_wiretap::hermitian::{rank2_eigenpairs, HermitianMatrix};
use mimo_wiretap::{C64, CVector};

fn main() {
    let r = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let s = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);

    let m = &HermitianMatrix::outer(&r) - &HermitianMatrix::outer(&s);
    let pairs = rank2_eigenpairs(&r, &s).unwrap();
    let dense = m.eigenvalues();

    println!("nonzero closed-form eigenpairs of rr† − ss†:");
    for p in &pairs {
        let residual = (m.as_matrix() * &p.vector - &p.vector * C64::new(p.value, 0.0)).norm();
        println!(
            "  η = {:+.12}  (‖Mv − ηv‖ = {:.2e})  v = [{:.4}, {:.4}]",
            p.value, residual, p.vector[0], p.vector[1]
        );
    }
    println!("dense eigensolver spectrum: {dense:?}");
    println!("(golden values here: η = ±(√5 ∓ 1)/2)");
}
