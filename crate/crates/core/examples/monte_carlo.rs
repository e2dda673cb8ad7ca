//! Simulated fusion error next to the Gaussian closed form.
//!
//! Usage: `cargo run --release --example monte_carlo [trials]`

use auditbit::analytic::Scheme;
use auditbit::model::{validate, ThresholdMode};
use auditbit::simcore::run_experiment;
use auditbit::{AttackParams, DetectionParams, NetworkConfig};

fn main() {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50_000);
    for mode in [ThresholdMode::Expected, ThresholdMode::Realized] {
        let mut net = NetworkConfig::new(20);
        net.threshold_mode = mode;
        net.seed = 42;
        let cfg = validate(net, DetectionParams::new(0.9, 0.1), AttackParams::legacy(0.3, 0.7)).unwrap();
        let result = run_experiment(&cfg, &Scheme::ALL, trials).unwrap();
        println!("{mode:?} threshold, {trials} trials");
        for ((scheme, emp), perf) in result.schemes.iter().zip(&result.performance) {
            println!("  {:<16} {:.4} +- {:.4}   closed form {:.4}", scheme.name(), emp.p_e_hat(), emp.standard_error(), perf.p_e);
        }
    }
}
