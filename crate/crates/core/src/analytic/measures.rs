use serde::Serialize;

use super::kernel::{GroupLaw, GroupOutcome};
use super::pmf::{conditional_pmf, exact_group_vote, ConditionalPmf};
use super::posterior::{eas_posterior, intelligent_posterior, SetId};
use crate::error::AnalysisError;
use crate::model::{AttackParams, DetectionParams, EasSet, Hypothesis};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Blinding {
    pub is_blind: bool,
    /// `D(π10 || π11)` of the ungrouped pmf.
    pub d0: f64,
}

/// Whether the attack makes every direct decision uninformative.
pub fn blinding_condition(det: &DetectionParams, atk: &AttackParams) -> Blinding {
    let pmf = conditional_pmf(det, atk.alpha0, atk.p1);
    let ConditionalPmf { pi11, pi10 } = pmf;
    let part = |a: f64, b: f64| if a == 0.0 { 0.0 } else { a * (a / b).ln() };
    let d0 = part(pi10, pi11) + part(1.0 - pi10, 1.0 - pi11);
    Blinding { is_blind: (atk.alpha0 * atk.p1 - 0.5).abs() <= 1e-12, d0 }
}

fn ss_low(o: &GroupOutcome) -> bool {
    o.d_i && o.d_j
}

fn any_byzantine(o: &GroupOutcome) -> bool {
    o.identity_i.is_byzantine() || o.identity_j.is_byzantine()
}

/// `P(u_i == u_j | i, j in SS_low, at least one Byzantine in the pair)`.
pub fn mismatch_ratio_f(det: &DetectionParams, atk: &AttackParams) -> Result<f64, AnalysisError> {
    let law = GroupLaw::new(det, atk);
    law.conditional(None, |o| o.u_i == o.u_j, |o| ss_low(o) && any_byzantine(o))
        .ok_or_else(|| AnalysisError::UndefinedPosterior("SS_low with a Byzantine member".into()))
}

/// The same ratio by removing the all-honest share from `P(M | SS_low)`.
pub fn mismatch_ratio_f_by_complement(det: &DetectionParams, atk: &AttackParams) -> Result<f64, AnalysisError> {
    let law = GroupLaw::new(det, atk);
    let undefined = || AnalysisError::UndefinedPosterior("SS_low with a Byzantine member".into());
    let honest = |o: &GroupOutcome| !any_byzantine(o);
    let p_match = law.conditional(None, |o| o.u_i == o.u_j, ss_low).ok_or_else(undefined)?;
    let p_honest = law.conditional(None, honest, ss_low).ok_or_else(undefined)?;
    if p_honest >= 1.0 {
        return Err(undefined());
    }
    // honest pairs are always in SS_low and agree with prob π² + (1-π)²
    let agree = |p: f64| p * p + (1.0 - p) * (1.0 - p);
    let honest_match = det.prior0 * agree(det.p_f) + det.prior1 * agree(det.p_d);
    Ok((p_match - p_honest * honest_match) / (1.0 - p_honest))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Grouping {
    /// Mixes the set-conditional pmfs over the sensor's status indicator.
    Grouped,
    /// Uses the pmf at `alpha0` directly.
    Ungrouped,
}

/// Per-sensor Bhattacharyya distance `-ln Σ_u sqrt(E_d[P(u|H1,d) P(u|H0,d)])`.
pub fn bhattacharyya_distance(det: &DetectionParams, atk: &AttackParams, mode: Grouping) -> f64 {
    let mixture: Vec<(f64, ConditionalPmf)> = match mode {
        Grouping::Ungrouped => vec![(1.0, conditional_pmf(det, atk.alpha0, atk.p1))],
        Grouping::Grouped => intelligent_posterior(atk)
            .entries
            .iter()
            .filter(|e| e.occupancy > 0.0)
            .filter_map(|e| Some((e.occupancy, e.pmf(det).ok()?)))
            .collect(),
    };
    let coefficient: f64 = [true, false]
        .iter()
        .map(|&u| {
            let prob = |pmf: &ConditionalPmf, h| if u { pmf.one(h) } else { 1.0 - pmf.one(h) };
            mixture
                .iter()
                .map(|(w, pmf)| w * prob(pmf, Hypothesis::H1) * prob(pmf, Hypothesis::H0))
                .sum::<f64>()
                .sqrt()
        })
        .sum();
    -coefficient.ln()
}

/// Expected decision bits reaching the fusion center per round.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpectedBits {
    /// Matched `SS_low` pairs count once.
    pub ras_group_level: f64,
    /// Matched `SS_low` pairs count both sensors.
    pub ras_sensor_level: f64,
    /// Every sensor sends a direct bit and an audit copy.
    pub tas: f64,
}

pub fn expected_transmitted_bits(
    det: &DetectionParams,
    atk: &AttackParams,
    n_sensors: usize,
) -> Result<ExpectedBits, AnalysisError> {
    if n_sensors < 2 || !n_sensors.is_multiple_of(2) {
        return Err(AnalysisError::InvalidArgument(format!("n_sensors must be even and at least 2, got {n_sensors}")));
    }
    let n = n_sensors as f64;
    let post = eas_posterior(atk);
    let p_ss = post.occupancy(SetId::Eas(EasSet::SsLow));
    let agree = if p_ss > 0.0 { exact_group_vote(det, atk).map_or(0.0, |(_, a)| a) } else { 0.0 };
    let singles = n * (post.occupancy(SetId::Eas(EasSet::LowHigh)) + post.occupancy(SetId::Eas(EasSet::HighLow)));
    Ok(ExpectedBits {
        ras_group_level: n / 2.0 * agree * p_ss + singles,
        ras_sensor_level: n * agree * p_ss + singles,
        tas: 2.0 * n,
    })
}
