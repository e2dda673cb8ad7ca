use rayon::prelude::*;
use serde::Serialize;

use super::fusion::fuse;
use super::trial::run_trial;
use crate::analytic::{scheme_performance, Scheme, SchemePerformance};
use crate::error::AnalysisError;
use crate::model::{CheckedConfig, Hypothesis};

/// Error counts of one scheme over a batch of trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct EmpiricalPerf {
    pub trials: u64,
    pub errors: u64,
    /// Trials and errors split by true hypothesis, `[H0, H1]`.
    pub trials_by_hypothesis: [u64; 2],
    pub errors_by_hypothesis: [u64; 2],
}

impl EmpiricalPerf {
    pub fn p_e_hat(&self) -> f64 {
        self.errors as f64 / self.trials as f64
    }

    pub fn standard_error(&self) -> f64 {
        let p = self.p_e_hat();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Error rate under `h` (false alarm for H0, miss for H1).
    pub fn rate(&self, h: Hypothesis) -> f64 {
        self.errors_by_hypothesis[h.index()] as f64 / self.trials_by_hypothesis[h.index()] as f64
    }

    fn record(&mut self, truth: Hypothesis, decided: Hypothesis) {
        self.trials += 1;
        self.trials_by_hypothesis[truth.index()] += 1;
        if truth != decided {
            self.errors += 1;
            self.errors_by_hypothesis[truth.index()] += 1;
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.trials += other.trials;
        self.errors += other.errors;
        for k in 0..2 {
            self.trials_by_hypothesis[k] += other.trials_by_hypothesis[k];
            self.errors_by_hypothesis[k] += other.errors_by_hypothesis[k];
        }
        self
    }
}

/// Set occupancy and transmitted-bit totals over a batch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct OccupancyCounts {
    /// Sensors per four-set label, summed over trials.
    pub eas_sensors: [u64; 4],
    /// Four-set label of the first sensor of each group only; these are
    /// independent across groups.
    pub eas_first_of_group: [u64; 4],
    pub groups: u64,
    pub group_votes: u64,
    pub ras_bits: u64,
    pub ras_bits_squared: f64,
    pub ras_bits_sensor_level: u64,
}

impl OccupancyCounts {
    fn merge(mut self, o: Self) -> Self {
        for k in 0..4 {
            self.eas_sensors[k] += o.eas_sensors[k];
            self.eas_first_of_group[k] += o.eas_first_of_group[k];
        }
        self.groups += o.groups;
        self.group_votes += o.group_votes;
        self.ras_bits += o.ras_bits;
        self.ras_bits_squared += o.ras_bits_squared;
        self.ras_bits_sensor_level += o.ras_bits_sensor_level;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub schemes: Vec<(Scheme, EmpiricalPerf)>,
    pub performance: Vec<SchemePerformance>,
    pub occupancy: OccupancyCounts,
    pub trials: u64,
}

impl ExperimentResult {
    pub fn get(&self, scheme: Scheme) -> Option<&EmpiricalPerf> {
        self.schemes.iter().find(|(s, _)| *s == scheme).map(|(_, p)| p)
    }

    pub fn mean_ras_bits(&self) -> f64 {
        self.occupancy.ras_bits as f64 / self.trials as f64
    }

    pub fn ras_bits_standard_error(&self) -> f64 {
        let n = self.trials as f64;
        let mean = self.mean_ras_bits();
        let var = (self.occupancy.ras_bits_squared / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
        (var / n).sqrt()
    }
}

#[derive(Clone, Debug)]
struct Partial {
    perf: Vec<EmpiricalPerf>,
    occupancy: OccupancyCounts,
}

impl Partial {
    fn new(n_schemes: usize) -> Self {
        Partial { perf: vec![EmpiricalPerf::default(); n_schemes], occupancy: OccupancyCounts::default() }
    }

    fn merge(self, other: Self) -> Self {
        Partial {
            perf: self.perf.into_iter().zip(other.perf).map(|(a, b)| a.merge(b)).collect(),
            occupancy: self.occupancy.merge(other.occupancy),
        }
    }
}

/// Runs `n_trials` independent trials in parallel and tallies errors per
/// scheme. Results depend only on the configuration and seed.
pub fn run_experiment(cfg: &CheckedConfig, schemes: &[Scheme], n_trials: u64) -> Result<ExperimentResult, AnalysisError> {
    if n_trials == 0 {
        return Err(AnalysisError::InvalidArgument("n_trials must be at least 1".into()));
    }
    let performance = schemes
        .iter()
        .map(|&s| scheme_performance(s, &cfg.detection, &cfg.attack, cfg.network.n_sensors))
        .collect::<Result<Vec<_>, _>>()?;
    let mode = cfg.network.threshold_mode;

    let total = (0..n_trials)
        .into_par_iter()
        .fold(|| Partial::new(performance.len()), |mut acc, index| {
            let trial = run_trial(cfg, index);
            for (slot, perf) in acc.perf.iter_mut().zip(&performance) {
                slot.record(trial.hypothesis, fuse(perf, &trial, mode));
            }
            let t = &trial.tallies;
            let occ = &mut acc.occupancy;
            for k in 0..4 {
                occ.eas_sensors[k] += t.eas[k].count as u64;
            }
            for g in &trial.groups {
                occ.eas_first_of_group[g.eas_sets().0.index()] += 1;
            }
            occ.groups += trial.groups.len() as u64;
            occ.group_votes += t.group_votes.count as u64;
            let bits = t.ras_bits_group_level() as u64;
            occ.ras_bits += bits;
            occ.ras_bits_squared += (bits * bits) as f64;
            occ.ras_bits_sensor_level += t.ras_bits_sensor_level() as u64;
            acc
        })
        .reduce(|| Partial::new(performance.len()), Partial::merge);

    Ok(ExperimentResult {
        schemes: schemes.iter().copied().zip(total.perf).collect(),
        performance,
        occupancy: total.occupancy,
        trials: n_trials,
    })
}
