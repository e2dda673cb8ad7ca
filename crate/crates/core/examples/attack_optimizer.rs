//! Best attack on a grid for each scheme and Byzantine fraction.

use auditbit::adversary::optimize_attack;
use auditbit::analytic::Scheme;
use auditbit::DetectionParams;

fn main() {
    let det = DetectionParams::new(0.9, 0.1);
    for scheme in [Scheme::Direct, Scheme::Tas, Scheme::TasIntelligent, Scheme::Eas, Scheme::Ras] {
        for alpha0 in [0.1, 0.3, 0.45] {
            let best = optimize_attack(scheme, &det, alpha0, 100, 0.05).unwrap();
            println!("{:<16} alpha0 {alpha0:.2}: p1 {:.2} p2 {:.2} P_e {:.4e}", scheme.name(), best.p1, best.p2, best.p_e);
        }
    }
}
