//! Four audit sets from both status bits of a pair, against the two-set
//! split from a sensor's own bit.

use auditbit::analytic::{eas_posterior, scheme_performance, Scheme, SetId};
use auditbit::model::EasSet;
use auditbit::{AttackParams, DetectionParams};

fn main() {
    let det = DetectionParams::new(0.9, 0.1);
    let atk = AttackParams::new(0.3, 0.7, 0.2);
    let post = eas_posterior(&atk);
    for s in EasSet::ALL {
        let e = post.get(SetId::Eas(s)).unwrap();
        println!("{:<10} P = {:.4}  alpha = {:?}", s.name(), e.occupancy, e.alpha);
    }
    for p2 in [0.0, 0.1, 0.3, 0.6, 1.0] {
        let atk = AttackParams::new(0.3, 0.7, p2);
        let tas = scheme_performance(Scheme::TasIntelligent, &det, &atk, 100).unwrap().p_e;
        let eas = scheme_performance(Scheme::Eas, &det, &atk, 100).unwrap().p_e;
        println!("p2 = {p2:.1}: tas {tas:.3e}  eas {eas:.3e}");
    }
}
