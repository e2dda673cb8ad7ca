//! Cross-check of the closed-form set posteriors against brute-force
//! enumeration of every outcome of one pair.

use auditbit::analytic::{eas_posterior, SetId};
use auditbit::model::EasSet;
use auditbit::oracle::{enumerate_group, posterior_from_oracle, Conditioning};
use auditbit::{AttackParams, DetectionParams};

fn main() {
    let det = DetectionParams::new(0.9, 0.1);
    let atk = AttackParams::new(0.3, 0.7, 0.2);
    let table = enumerate_group(&det, &atk);
    println!("{} outcomes, mass {:?}", table.len(), table.mass());
    let post = eas_posterior(&atk);
    for s in EasSet::ALL {
        let closed = post.alpha(SetId::Eas(s));
        let brute = posterior_from_oracle(&table, Conditioning::Eas(s)).ok();
        println!("{:<10} closed {closed:?}  enumerated {brute:?}", s.name());
    }
    if let Some(path) = std::env::args().nth(1) {
        table.write_csv(std::fs::File::create(path).unwrap()).unwrap();
    }
}
