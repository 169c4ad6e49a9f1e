//! Rank-one optimal regime: when the difference Gram has exactly one
//! positive eigenvalue, beamforming along the top generalized eigenvector of
//! the pencil (I + S_E, I + S_R) is globally optimal at any transmitter size.
//!
//! Run with: `cargo run --example rank_one_regime`

use mimo_wiretap::channel::{ChannelPair, Snr};
use mimo_wiretap::closed_form::solve_rank_one_general;
use mimo_wiretap::{C64, CMatrix};

fn main() {
    // Single-receive-antenna channel with a two-antenna eavesdropper: the
    // difference Gram is rank one plus a negative part, i.e. at most one
    // positive eigenvalue.
    let h_r = CMatrix::from_row_slice(
        1,
        3,
        &[C64::new(1.1, 0.2), C64::new(0.5, -0.7), C64::new(-0.3, 0.4)],
    );
    let h_e = CMatrix::from_row_slice(
        2,
        3,
        &[
            C64::new(0.4, 0.1),
            C64::new(-0.2, 0.3),
            C64::new(0.1, 0.0),
            C64::new(0.2, -0.2),
            C64::new(0.3, 0.1),
            C64::new(-0.1, 0.2),
        ],
    );
    let pair = ChannelPair::new(h_r, h_e, false).unwrap();
    println!("difference Gram: {:?}", pair.difference_class().tag);

    for snr_db in [0.0, 10.0, 20.0] {
        let snr = Snr::from_db(snr_db);
        let sol = solve_rank_one_general(&pair, snr).unwrap();
        let kkt = sol.kkt.as_ref().unwrap();
        println!(
            "snr {snr_db:>4} dB: C_s = {:.6} nats, rank {}, certified {}, kkt {}",
            sol.capacity_nats,
            sol.q.rank(1e-6),
            sol.certified,
            if kkt.passed { "passed" } else { "failed" }
        );
    }
}
