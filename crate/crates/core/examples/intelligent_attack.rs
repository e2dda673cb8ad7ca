//! Splitting the flip probability into a report flip `p1` and a relay flip
//! `p2`. Relaying honestly (`p2 = 0`) makes the audit blind.

use auditbit::analytic::{intelligent_posterior, scheme_performance, Scheme, SetId};
use auditbit::model::TasSet;
use auditbit::{AttackParams, DetectionParams};

fn main() {
    let det = DetectionParams::new(0.9, 0.1);
    let direct = scheme_performance(Scheme::Direct, &det, &AttackParams::new(0.3, 0.7, 0.0), 100).unwrap();
    println!("direct fusion: P_e = {:.4e}", direct.p_e);
    println!("  p2    low      high     gamma_f  gamma_m  P_e");
    for k in 0..=10 {
        let atk = AttackParams::new(0.3, 0.7, k as f64 / 10.0);
        let post = intelligent_posterior(&atk);
        let perf = scheme_performance(Scheme::TasIntelligent, &det, &atk, 100).unwrap();
        println!(
            "{:4.1} {:8.4} {:8.4} {:8.4} {:8.4}  {:.4e}",
            atk.p2,
            post.alpha(SetId::Tas(TasSet::Low)).unwrap_or(f64::NAN),
            post.alpha(SetId::Tas(TasSet::High)).unwrap_or(f64::NAN),
            perf.gamma_f,
            perf.gamma_m,
            perf.p_e
        );
    }
}
