//! Closed-form MISO secrecy capacity: the optimum is a beamformer along the
//! top eigenvector of h_R h_R† − α° h_E h_E†, where α° is the larger root of
//! the parametric quadratic. The root condition F(α°) = 0 is checked here.
//!
//! Run with: `cargo run --example miso_closed_form`

use mimo_wiretap::channel::Snr;
use mimo_wiretap::closed_form::{miso_f_alpha, solve_miso};
use mimo_wiretap::{C64, CVector};

fn main() {
    let h_r = CVector::from_vec(vec![
        C64::new(1.0, 0.3),
        C64::new(-0.4, 0.8),
        C64::new(0.2, -0.5),
    ]);
    let h_e = CVector::from_vec(vec![
        C64::new(0.6, -0.1),
        C64::new(0.3, 0.2),
        C64::new(-0.2, 0.4),
    ]);

    for snr_db in [0.0, 10.0, 20.0] {
        let snr = Snr::from_db(snr_db);
        let sol = solve_miso(&h_r, &h_e, snr).unwrap();
        let alpha = sol.capacity_nats.exp();
        println!(
            "snr {snr_db:>4} dB: C_s = {:.6} nats, α° = {alpha:.6}, F(α°) = {:+.3e}, rank {}",
            sol.capacity_nats,
            miso_f_alpha(&h_r, &h_e, snr, alpha),
            sol.q.rank(1e-6),
        );
        let kkt = sol.kkt.unwrap();
        println!(
            "             KKT: commute {:.2e}, lambda {:+.2e} → {}",
            kkt.r_commute,
            kkt.r_lambda,
            if kkt.passed { "passed" } else { "failed" }
        );
    }
}
