//! Two-antenna transmitter: the dispatcher compares the certified rank-one
//! pencil solution against the full-rank candidate from the quadratic
//! equations, and the rank test g(ρ) predicts which one wins.
//!
//! Run with: `cargo run --example two_antenna`

use mimo_wiretap::channel::{ChannelPair, Snr};
use mimo_wiretap::closed_form::{rank_test_g, solve_2x2};
use mimo_wiretap::{C64, CMatrix};

fn main() {
    // Both Grams full rank, difference positive definite: the optimum
    // transitions from rank one to rank two as the SNR grows.
    let h_r = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(1.2, 0.1),
            C64::new(0.3, -0.4),
            C64::new(-0.2, 0.5),
            C64::new(0.9, 0.0),
        ],
    );
    let h_e = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.4, 0.0),
            C64::new(0.1, 0.2),
            C64::new(0.0, -0.1),
            C64::new(0.3, 0.1),
        ],
    );
    let pair = ChannelPair::new(h_r, h_e, false).unwrap();
    println!("difference Gram: {:?}", pair.difference_class().tag);

    for snr_db in [-10.0, 0.0, 10.0, 20.0, 30.0] {
        let snr = Snr::from_db(snr_db);
        let sol = solve_2x2(&pair, snr).unwrap();
        let g = rank_test_g(&pair, snr).unwrap();
        println!(
            "snr {snr_db:>5} dB: C_s = {:.6} nats, rank {}, solver {}, g(ρ) = {:+.3e}",
            sol.capacity_nats,
            sol.q.rank(1e-6),
            sol.solver,
            g,
        );
    }
}
