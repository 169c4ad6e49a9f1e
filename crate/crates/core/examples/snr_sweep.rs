//! Library-level SNR sweep of the indefinite 4×4 example: capacity grows
//! with SNR while the optimal covariance keeps rank two — the number of
//! positive eigenvalues of the difference Gram.
//!
//! Run with: `cargo run --release --example snr_sweep`

use mimo_wiretap::channel::Snr;
use mimo_wiretap::fixed_point::{solve_fixed_point, FixedPointConfig};
use mimo_wiretap::fixtures;
use rayon::prelude::*;

fn main() {
    let pair = fixtures::channel_pair("paper_ex2").unwrap();
    let positive = pair
        .difference_class()
        .eigenvalues
        .iter()
        .filter(|&&v| v > 0.0)
        .count();
    println!("positive difference-Gram eigenvalues: {positive}");
    println!("{:>7} {:>12} {:>5} {:>10}", "snr_db", "C_s (nats)", "rank", "kkt");

    let rows: Vec<_> = (0..=10)
        .into_par_iter()
        .map(|k| {
            let snr_db = 2.0 * k as f64;
            let report = solve_fixed_point(&pair, Snr::from_db(snr_db), &FixedPointConfig::default());
            (snr_db, report)
        })
        .collect();

    for (snr_db, report) in rows {
        println!(
            "{snr_db:>7} {:>12.6} {:>5} {:>10}",
            report.solution.capacity_nats,
            report.solution.q.rank(1e-6),
            if report.kkt_passed { "passed" } else { "failed" }
        );
    }
}
