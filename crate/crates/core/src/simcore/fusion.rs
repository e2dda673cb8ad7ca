use serde::Serialize;

use super::trial::{SetTallies, TrialRecord};
use crate::analytic::SchemePerformance;
use crate::model::{Hypothesis, ThresholdMode};

/// The statistic, the threshold it was compared against, and the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FusionOutcome {
    pub statistic: f64,
    pub eta: f64,
    pub decision: Hypothesis,
}

/// Applies the weighted vote of `perf` to realized set tallies. Ties go
/// to H1. Sets absent from `perf` (zero expected occupancy) contribute
/// nothing.
pub fn decide(perf: &SchemePerformance, tallies: &SetTallies, mode: ThresholdMode) -> FusionOutcome {
    let statistic: f64 = perf.terms.iter().map(|t| t.weight * tallies.get(t.set).ones as f64).sum();
    let eta = match mode {
        ThresholdMode::Expected => perf.eta,
        ThresholdMode::Realized => perf.threshold_with(|s| tallies.get(s).count as f64),
    };
    let decision = if statistic >= eta { Hypothesis::H1 } else { Hypothesis::H0 };
    FusionOutcome { statistic, eta, decision }
}

/// Global decision of `perf.scheme` on one trial.
pub fn fuse(perf: &SchemePerformance, trial: &TrialRecord, mode: ThresholdMode) -> Hypothesis {
    decide(perf, &trial.tallies, mode).decision
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{scheme_performance, Scheme};
    use crate::model::{AttackParams, DetectionParams, GroupTranscript, Identity};
    use crate::simcore::trial::group_transcript;

    fn det() -> DetectionParams {
        DetectionParams::new(0.9, 0.1)
    }

    #[test]
    fn unanimous_ones_decide_h1() {
        let perf = scheme_performance(Scheme::Direct, &det(), &AttackParams::new(0.1, 0.5, 0.0), 100).unwrap();
        let honest = group_transcript((Identity::Honest, Identity::Honest), (true, true), (false, false, false), (false, false, false));
        let tallies = SetTallies::from_groups(&vec![honest; 50]);
        for mode in [ThresholdMode::Expected, ThresholdMode::Realized] {
            assert_eq!(decide(&perf, &tallies, mode).decision, Hypothesis::H1);
        }
    }

    #[test]
    fn ras_with_everyone_dropped() {
        let perf = scheme_performance(Scheme::Ras, &det(), &AttackParams::new(0.3, 0.7, 0.2), 100).unwrap();
        // both sensors Byzantine, own bits inconsistent, no relay flip: d_i = d_j = 0
        let g: GroupTranscript =
            group_transcript((Identity::Byzantine, Identity::Byzantine), (true, true), (true, false, false), (true, false, false));
        assert!(!g.d_i() && !g.d_j());
        let tallies = SetTallies::from_groups(&vec![g; 50]);
        let out = decide(&perf, &tallies, ThresholdMode::Expected);
        assert_eq!(out.statistic, 0.0);
        let expect = if 0.0 >= perf.eta { Hypothesis::H1 } else { Hypothesis::H0 };
        assert_eq!(out.decision, expect);
        // realized threshold with nothing observed is the prior term alone
        let realized = decide(&perf, &tallies, ThresholdMode::Realized);
        assert_eq!(realized.eta, 0.0);
        assert_eq!(realized.decision, Hypothesis::H1);
    }
}
