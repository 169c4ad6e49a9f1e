//! Classify the difference Gram of the embedded example channels and of a
//! degraded channel where the secrecy capacity is zero.
//!
//! Run with: `cargo run --example classify_channel`

use mimo_wiretap::channel::ChannelPair;
use mimo_wiretap::fixtures;
use mimo_wiretap::{C64, CMatrix};

fn report(name: &str, pair: &ChannelPair) {
    let class = pair.difference_class();
    let eigs: Vec<String> = class.eigenvalues.iter().map(|v| format!("{v:.4}")).collect();
    println!("{name}:");
    println!("  eigenvalues of H_R†H_R − H_E†H_E: {}", eigs.join(", "));
    println!("  definiteness: {:?}", class.tag);
    println!(
        "  positive secrecy capacity achievable: {}",
        pair.positivity_test()
    );
}

fn main() {
    for name in fixtures::FIXTURE_NAMES {
        let pair = fixtures::channel_pair(name).unwrap();
        report(name, &pair);
    }

    // A degraded channel: the eavesdropper sees a strictly stronger copy of
    // the legitimate channel, so the difference Gram is negative definite.
    let h_r = CMatrix::from_row_slice(1, 2, &[C64::new(1.0, 0.0), C64::new(0.5, 0.0)]);
    let h_e = &h_r * C64::new(2.0, 0.0);
    let degraded = ChannelPair::new(h_r, h_e, false).unwrap();
    report("degraded", &degraded);
}
