//! Group votes: an agreeing pair with clean status sends one bit for both.

use auditbit::analytic::{expected_transmitted_bits, scheme_performance, Scheme};
use auditbit::{AttackParams, DetectionParams};

fn main() {
    let det = DetectionParams::new(0.9, 0.1);
    println!("alpha0  p1   direct     eas        ras        E[bits]");
    for alpha0 in [0.15, 0.3, 0.45] {
        for p1 in [0.5, 0.75, 1.0] {
            let atk = AttackParams::new(alpha0, p1, 0.0);
            let pe = |s| scheme_performance(s, &det, &atk, 100).unwrap().p_e;
            let bits = expected_transmitted_bits(&det, &atk, 100).unwrap();
            println!(
                "{alpha0:5.2} {p1:5.2} {:.3e}  {:.3e}  {:.3e}  {:.2}",
                pe(Scheme::Direct),
                pe(Scheme::Eas),
                pe(Scheme::Ras),
                bits.ras_group_level
            );
        }
    }
}
