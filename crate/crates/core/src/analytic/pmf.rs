use serde::Serialize;

use super::kernel::GroupLaw;
use crate::error::AnalysisError;
use crate::model::{AttackParams, DetectionParams, Hypothesis};

/// Clamp applied to probabilities before taking logs.
pub const EPSILON: f64 = 1e-15;

/// `P(u_i = 1 | set, H1)` and `P(u_i = 1 | set, H0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConditionalPmf {
    pub pi11: f64,
    pub pi10: f64,
}

impl ConditionalPmf {
    pub fn new(pi11: f64, pi10: f64) -> Self {
        ConditionalPmf { pi11, pi10 }
    }

    pub fn pi01(&self) -> f64 {
        1.0 - self.pi11
    }

    pub fn pi00(&self) -> f64 {
        1.0 - self.pi10
    }

    /// `P(u = 1 | h)`.
    pub fn one(&self, h: Hypothesis) -> f64 {
        match h {
            Hypothesis::H0 => self.pi10,
            Hypothesis::H1 => self.pi11,
        }
    }

    pub fn clamped(&self) -> Self {
        ConditionalPmf { pi11: clamp_probability(self.pi11), pi10: clamp_probability(self.pi10) }
    }
}

pub fn clamp_probability(p: f64) -> f64 {
    p.clamp(EPSILON, 1.0 - EPSILON)
}

fn flipped(p: f64, t: f64) -> f64 {
    // p (1 - t) + t (1 - p), arranged so t = 1/2 gives exactly 1/2
    t + p * (1.0 - 2.0 * t)
}

/// Decision pmf of a sensor that is Byzantine with probability `alpha` and
/// then flips its direct bit with probability `flip`.
pub fn conditional_pmf(det: &DetectionParams, alpha: f64, flip: f64) -> ConditionalPmf {
    let t = alpha * flip;
    ConditionalPmf { pi11: flipped(det.p_d, t), pi10: flipped(det.p_f, t) }
}

/// `π²/(π² + (1-π)²)` per hypothesis: the pmf of the common decision of two
/// independent sensors that happen to agree.
pub fn group_vote_pmf(pmf: &ConditionalPmf) -> ConditionalPmf {
    fn agree(p: f64) -> f64 {
        let (a, b) = (p * p, (1.0 - p) * (1.0 - p));
        if a + b == 0.0 {
            0.5
        } else {
            a / (a + b)
        }
    }
    ConditionalPmf { pi11: agree(pmf.pi11), pi10: agree(pmf.pi10) }
}

/// Exact pmf of the common decision of a matched `SS_low` pair, together
/// with `P(u_i == u_j | SS_low)` (prior-weighted).
pub fn exact_group_vote(det: &DetectionParams, atk: &AttackParams) -> Option<(ConditionalPmf, f64)> {
    let law = GroupLaw::new(det, atk);
    let ss = |o: &super::kernel::GroupOutcome| o.d_i && o.d_j;
    let matched = |o: &super::kernel::GroupOutcome| ss(o) && o.u_i == o.u_j;
    let pi = |h| law.conditional(Some(h), |o| o.u_i, matched);
    let agree = law.conditional(None, |o| o.u_i == o.u_j, ss)?;
    Some((ConditionalPmf { pi11: pi(Hypothesis::H1)?, pi10: pi(Hypothesis::H0)? }, agree))
}

/// `log(π11 (1-π10) / (π10 (1-π11)))`. Boundary probabilities give an
/// infinite weight and are rejected; callers clamp first.
pub fn llr_weight(pmf: &ConditionalPmf) -> Result<f64, AnalysisError> {
    let ConditionalPmf { pi11, pi10 } = *pmf;
    if pi11 == pi10 {
        return Ok(0.0);
    }
    if [pi11, pi10].iter().any(|&p| p <= 0.0 || p >= 1.0) {
        return Err(AnalysisError::InfiniteWeight { pi11, pi10 });
    }
    Ok((pi11 * (1.0 - pi10) / (pi10 * (1.0 - pi11))).ln())
}

/// `log((1-π10)/(1-π11))`, the per-vote threshold offset. Same boundary
/// rule as [`llr_weight`].
pub fn threshold_offset(pmf: &ConditionalPmf) -> Result<f64, AnalysisError> {
    let ConditionalPmf { pi11, pi10 } = *pmf;
    if pi11 == pi10 {
        return Ok(0.0);
    }
    if pi11 >= 1.0 || pi10 >= 1.0 {
        return Err(AnalysisError::InfiniteWeight { pi11, pi10 });
    }
    Ok(((1.0 - pi10) / (1.0 - pi11)).ln())
}
