//! Posterior Byzantine fraction in the two audit sets under the legacy
//! attack (one flip probability for everything).

use auditbit::analytic::{as_printed, tas_posterior, SetId};
use auditbit::model::TasSet;
use auditbit::{AttackParams, DetectionParams};

fn main() {
    let det = DetectionParams::new(0.9, 0.1);
    println!("alpha0     p   low-set   high-set  P(low)");
    for alpha0 in [0.1, 0.3, 0.5] {
        for p in [0.2, 0.5, 0.8, 1.0] {
            let post = tas_posterior(&AttackParams::legacy(alpha0, p)).expect("legacy attack");
            let low = post.alpha(SetId::Tas(TasSet::Low)).unwrap_or(f64::NAN);
            let high = post.alpha(SetId::Tas(TasSet::High)).unwrap_or(f64::NAN);
            println!("{alpha0:6.2} {p:5.2} {low:9.4} {high:10.4} {:7.4}", post.occupancy(SetId::Tas(TasSet::Low)));
        }
    }

    // The textbook polynomials against the exact law at one point.
    for d in as_printed::compare(&det, &AttackParams::legacy(0.3, 0.7)) {
        println!("{:<28} printed {:.6}  exact {:.6}", d.quantity, d.printed, d.exact);
    }
}
