//! Fixed-point iteration on the embedded 4×4 example at 8 dB: iterate
//! Q ← K^{1/2} Q K^{1/2} / Tr(QK) from the uniform start until the
//! Frobenius residual drops below 1e-6, then verify the KKT conditions.
//!
//! Run with: `cargo run --example fixed_point_solve`

use mimo_wiretap::channel::Snr;
use mimo_wiretap::fixed_point::{solve_fixed_point, FixedPointConfig};
use mimo_wiretap::fixtures;

fn main() {
    let pair = fixtures::channel_pair("paper_ex1").unwrap();
    let snr = Snr::from_db(8.0);
    let report = solve_fixed_point(&pair, snr, &FixedPointConfig::default());

    println!(
        "converged: {} after {} iterations ({} restarts)",
        report.converged, report.iterations, report.restarts_used
    );
    for (k, r) in report.residual_history.iter().enumerate() {
        if k % 25 == 0 || k + 1 == report.residual_history.len() {
            println!("  iter {k:>4}: ‖Q_next − Q‖_F = {r:.3e}");
        }
    }
    let sol = &report.solution;
    println!("secrecy capacity: {:.9} nats", sol.capacity_nats);
    let eigs: Vec<String> = sol.q.eigenvalues().iter().map(|v| format!("{v:.6}")).collect();
    println!("Q eigenvalues: {} (rank {})", eigs.join(", "), sol.q.rank(1e-6));
    let kkt = sol.kkt.as_ref().unwrap();
    println!(
        "KKT: commute {:.2e}, lambda {:+.2e}, single {:.2e} → {}",
        kkt.r_commute,
        kkt.r_lambda,
        kkt.r_single,
        if kkt.passed { "passed" } else { "failed" }
    );
}
