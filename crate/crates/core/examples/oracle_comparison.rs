//! Cross-check the fixed-point solver against the independent oracle
//! (projected gradient ascent plus random rank-one sampling) on both
//! embedded examples.
//!
//! Run with: `cargo run --release --example oracle_comparison`

use mimo_wiretap::channel::Snr;
use mimo_wiretap::fixed_point::{solve_fixed_point, FixedPointConfig};
use mimo_wiretap::fixtures;
use mimo_wiretap::oracle::{oracle_best, OracleConfig};

fn main() {
    let snr = Snr::from_db(8.0);
    for name in fixtures::FIXTURE_NAMES {
        let pair = fixtures::channel_pair(name).unwrap();
        let fp = solve_fixed_point(&pair, snr, &FixedPointConfig::default());
        let oracle = oracle_best(&pair, snr, &OracleConfig::default());
        println!("{name} at 8 dB:");
        println!("  fixed-point: {:.9} nats (kkt_passed {})", fp.solution.capacity_nats, fp.kkt_passed);
        println!("  oracle:      {:.9} nats via {}", oracle.capacity_nats, oracle.solver);
        println!(
            "  gap: {:+.3e} nats",
            fp.solution.capacity_nats - oracle.capacity_nats
        );
    }
}
