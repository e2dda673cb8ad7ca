//! Cluster reports on the wire: one frame dumped, then the bit budget over
//! many rounds against the one-bit-per-sensor baseline.

use auditbit::analytic::expected_transmitted_bits;
use auditbit::clusternet::{aggregate_network, hexdump, measure_overhead};
use auditbit::model::validate;
use auditbit::simcore::run_trial;
use auditbit::{AttackParams, DetectionParams, NetworkConfig};

fn main() {
    let mut net = NetworkConfig::new(100);
    net.n_clusters = 5;
    let atk = AttackParams::new(0.3, 0.7, 0.2);
    let cfg = validate(net, DetectionParams::new(0.9, 0.1), atk).unwrap();

    let first = run_trial(&cfg, 0);
    let reports = aggregate_network(&first.groups, 5);
    print!("{}", hexdump(&reports[0].encode().unwrap()));

    let trials: Vec<_> = (0..5000).map(|k| run_trial(&cfg, k)).collect();
    let ledger = measure_overhead(&trials, 5);
    let expected = expected_transmitted_bits(&cfg.detection, &atk, 100).unwrap();
    println!("baseline      {} bits", ledger.tas_baseline());
    println!("mean payload  {:.2} +- {:.2} bits (expected {:.2})", ledger.mean_ras_bits(), ledger.standard_error(), expected.ras_group_level);
    println!("largest round {} bits", ledger.max_ras_bits());
}
