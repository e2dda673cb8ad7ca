use std::fmt;

use serde::Serialize;

use super::kernel::{flip_and_status, identity_prob, status_one};
use super::pmf::{conditional_pmf, ConditionalPmf};
use crate::error::AnalysisError;
use crate::model::{AttackParams, DetectionParams, EasSet, Identity, TasSet};

/// A set of sensors the fusion center treats as one population.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SetId {
    /// Every sensor, no partition (direct scheme).
    All,
    Tas(TasSet),
    Eas(EasSet),
    /// Matched pairs in `SS_low`, one vote per group.
    GroupVote,
}

impl SetId {
    pub fn name(self) -> &'static str {
        match self {
            SetId::All => "all",
            SetId::Tas(s) => s.name(),
            SetId::Eas(s) => s.name(),
            SetId::GroupVote => "group_vote",
        }
    }
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Posterior and occupancy of one set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SetEntry {
    pub set: SetId,
    /// Probability that a given sensor lands in the set.
    pub occupancy: f64,
    /// `P(i = B | set)`; `None` when the set is unreachable.
    pub alpha: Option<f64>,
    /// `P(f_u = 1 | i = B, set)`: how likely a Byzantine in this set has
    /// flipped its direct bit.
    pub own_flip: f64,
}

impl SetEntry {
    pub fn pmf(&self, det: &DetectionParams) -> Result<ConditionalPmf, AnalysisError> {
        let alpha = self
            .alpha
            .ok_or_else(|| AnalysisError::UndefinedPosterior(self.set.name().to_string()))?;
        Ok(conditional_pmf(det, alpha, self.own_flip))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetPosterior {
    pub entries: Vec<SetEntry>,
}

impl SetPosterior {
    pub fn get(&self, set: SetId) -> Option<&SetEntry> {
        self.entries.iter().find(|e| e.set == set)
    }

    pub fn alpha(&self, set: SetId) -> Option<f64> {
        self.get(set).and_then(|e| e.alpha)
    }

    pub fn occupancy(&self, set: SetId) -> f64 {
        self.get(set).map_or(0.0, |e| e.occupancy)
    }

    /// `Σ P(set) P(B | set)`, equal to `alpha0` for any partition.
    pub fn closure(&self) -> f64 {
        self.entries.iter().map(|e| e.occupancy * e.alpha.unwrap_or(0.0)).sum()
    }
}

fn bayes(joint: f64, total: f64) -> Option<f64> {
    (total > 0.0).then(|| (joint / total).clamp(0.0, 1.0))
}

/// `P(d_i = 1 | id_i)`, averaging over the partner's identity.
fn status_given_identity(atk: &AttackParams, id_i: Identity) -> f64 {
    Identity::BOTH
        .iter()
        .map(|&j| identity_prob(atk.alpha0, j) * status_one(atk, j, id_i))
        .sum()
}

/// Two-set posterior under the intelligent attack (`p1`, `p2` free).
pub fn intelligent_posterior(atk: &AttackParams) -> SetPosterior {
    let a = atk.alpha0;
    let low_b = status_given_identity(atk, Identity::Byzantine);
    let low_h = status_given_identity(atk, Identity::Honest);
    let p_low = a * low_b + (1.0 - a) * low_h;
    let p_high = a * (1.0 - low_b) + (1.0 - a) * (1.0 - low_h);
    SetPosterior {
        entries: vec![
            SetEntry { set: SetId::Tas(TasSet::Low), occupancy: p_low, alpha: bayes(a * low_b, p_low), own_flip: atk.p1 },
            SetEntry {
                set: SetId::Tas(TasSet::High),
                occupancy: p_high,
                alpha: bayes(a * (1.0 - low_b), p_high),
                own_flip: atk.p1,
            },
        ],
    }
}

/// Two-set posterior of the legacy attacker (`p1 == p2`).
pub fn tas_posterior(atk: &AttackParams) -> Result<SetPosterior, AnalysisError> {
    if !atk.is_legacy() {
        return Err(AnalysisError::UnsupportedParameters { scheme: "tas", requirement: "p1 == p2" });
    }
    let post = intelligent_posterior(atk);
    super::as_printed::log_tas_discrepancies(atk, &post);
    Ok(post)
}

fn bit(x: bool, p_one: f64) -> f64 {
    if x {
        p_one
    } else {
        1.0 - p_one
    }
}

/// Four-set posterior keyed by both status indicators of the group.
pub fn eas_posterior(atk: &AttackParams) -> SetPosterior {
    let a = atk.alpha0;
    let entries = EasSet::ALL
        .iter()
        .map(|&set| {
            let (own, partner) = status_pair(set);
            let mut byz = 0.0;
            let mut flip = 0.0;
            let mut total = 0.0;
            for id_i in Identity::BOTH {
                for id_j in Identity::BOTH {
                    let w = identity_prob(a, id_i) * identity_prob(a, id_j);
                    let p_di = bit(own, status_one(atk, id_j, id_i));
                    let p_dj = bit(partner, status_one(atk, id_i, id_j));
                    total += w * p_di * p_dj;
                    if id_i.is_byzantine() {
                        byz += w * p_di * p_dj;
                        flip += w * p_di * flip_and_status(atk, id_j, partner);
                    }
                }
            }
            let own_flip = if byz > 0.0 { (flip / byz).clamp(0.0, 1.0) } else { atk.p1 };
            SetEntry { set: SetId::Eas(set), occupancy: total, alpha: bayes(byz, total), own_flip }
        })
        .collect();
    SetPosterior { entries }
}

pub(crate) fn status_pair(set: EasSet) -> (bool, bool) {
    match set {
        EasSet::SsLow => (true, true),
        EasSet::LowHigh => (true, false),
        EasSet::HighLow => (false, true),
        EasSet::SsHigh => (false, false),
    }
}
