use serde::Serialize;

use super::codec::ClusterReport;
use super::mmsd::aggregate_network;
use crate::simcore::TrialRecord;

/// Bits forwarded in one round.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundOverhead {
    /// Decision bits per cluster, matched pairs counted once.
    pub per_cluster: Vec<u32>,
    pub ras_bits: u32,
    /// Decision bits with matched pairs counted twice.
    pub ras_bits_sensor_level: u32,
    /// Cluster ids, tags, counts and padding.
    pub header_bits: u32,
}

impl RoundOverhead {
    pub fn from_reports(reports: &[ClusterReport]) -> Self {
        let per_cluster: Vec<u32> = reports.iter().map(|r| r.payload_bits() as u32).collect();
        let ras_bits = per_cluster.iter().sum();
        let votes: u32 = reports.iter().map(|r| r.group_votes.len() as u32).sum();
        let frame_bits: u32 = reports.iter().map(|r| 8 * r.encoded_len() as u32).sum();
        RoundOverhead { per_cluster, ras_bits, ras_bits_sensor_level: ras_bits + votes, header_bits: frame_bits - ras_bits }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverheadLedger {
    pub n_sensors: usize,
    pub rounds: Vec<RoundOverhead>,
}

impl OverheadLedger {
    /// Every sensor sends a direct bit and an audit copy.
    pub fn tas_baseline(&self) -> u32 {
        2 * self.n_sensors as u32
    }

    pub fn mean_ras_bits(&self) -> f64 {
        self.rounds.iter().map(|r| r.ras_bits as f64).sum::<f64>() / self.rounds.len() as f64
    }

    pub fn mean_ras_bits_sensor_level(&self) -> f64 {
        self.rounds.iter().map(|r| r.ras_bits_sensor_level as f64).sum::<f64>() / self.rounds.len() as f64
    }

    pub fn standard_error(&self) -> f64 {
        let n = self.rounds.len() as f64;
        if n < 2.0 {
            return f64::NAN;
        }
        let mean = self.mean_ras_bits();
        let ss: f64 = self.rounds.iter().map(|r| (r.ras_bits as f64 - mean).powi(2)).sum();
        (ss / (n - 1.0) / n).sqrt()
    }

    pub fn running_mean(&self) -> Vec<f64> {
        let mut sum = 0.0;
        self.rounds
            .iter()
            .enumerate()
            .map(|(k, r)| {
                sum += r.ras_bits as f64;
                sum / (k + 1) as f64
            })
            .collect()
    }

    pub fn max_ras_bits(&self) -> u32 {
        self.rounds.iter().map(|r| r.ras_bits).max().unwrap_or(0)
    }
}

/// Aggregates every trial with `n_clusters` MMSDs and records what each
/// round forwards.
pub fn measure_overhead(trials: &[TrialRecord], n_clusters: usize) -> OverheadLedger {
    let n_sensors = trials.first().map_or(0, |t| 2 * t.groups.len());
    let rounds = trials
        .iter()
        .map(|t| RoundOverhead::from_reports(&aggregate_network(&t.groups, n_clusters)))
        .collect();
    OverheadLedger { n_sensors, rounds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate, AttackParams, DetectionParams, NetworkConfig};
    use crate::simcore::run_trial;

    #[test]
    fn ledger_matches_trial_tallies() {
        let cfg = validate(NetworkConfig::new(100), DetectionParams::new(0.9, 0.1), AttackParams::new(0.3, 0.7, 0.0)).unwrap();
        let trials: Vec<_> = (0..50).map(|k| run_trial(&cfg, k)).collect();
        let ledger = measure_overhead(&trials, 5);
        assert_eq!(ledger.tas_baseline(), 200);
        for (t, r) in trials.iter().zip(&ledger.rounds) {
            assert_eq!(r.ras_bits, t.tallies.ras_bits_group_level());
            assert_eq!(r.ras_bits_sensor_level, t.tallies.ras_bits_sensor_level());
            assert_eq!(r.per_cluster.len(), 5);
            assert!(r.ras_bits < 200);
        }
        assert_eq!(ledger.running_mean().last().copied(), Some(ledger.mean_ras_bits()));
    }
}
