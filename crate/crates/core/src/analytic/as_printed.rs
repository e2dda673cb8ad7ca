//! Expanded polynomials and pmfs in the form they are usually written down.
//!
//! These are kept for comparison only. Several of them disagree with exact
//! Bayes sums (the legacy high-set posterior does not vanish without
//! attackers, the intelligent low-set numerator has the wrong sign on its
//! `α0² p1² p2` term, and the four-set pmfs ignore the correlation between
//! a Byzantine's status pattern and its own flip). Fusion never uses them.

use serde::Serialize;

use super::pmf::{conditional_pmf, group_vote_pmf, ConditionalPmf};
use super::posterior::{eas_posterior, intelligent_posterior, SetId, SetPosterior};
use crate::model::{AttackParams, DetectionParams, TasSet};

pub fn tas_low(alpha0: f64, p: f64) -> f64 {
    let a = alpha0;
    a * (1.0 - p) * (1.0 - 2.0 * a * p * (1.0 - 2.0 * p))
        / (1.0 - a * (3.0 - 2.0 * p) * p + 4.0 * a * a * (1.0 - p) * p * p)
}

pub fn tas_high(alpha0: f64, p: f64) -> f64 {
    let a = alpha0;
    (1.0 + 2.0 * (1.0 - p) * (a - 2.0 * a * p)) / (1.0 + 2.0 * (1.0 - p) * (1.0 - 2.0 * a * p))
}

pub fn intelligent_low(alpha0: f64, p1: f64, p2: f64) -> f64 {
    let a = alpha0;
    let num = 4.0 * a * a * p1 * p1 * p2 + 4.0 * a * a * p1 * p2 - 2.0 * a * a * p1 + 2.0 * a * a * p1 * p1 - a * p2 + a;
    let den = 4.0 * a * a * p1 * p1 * p2 + 4.0 * a * a * p1 * p2 + 2.0 * a * p1 * p1 - a * p2 - 2.0 * a * p1 + 1.0;
    num / den
}

pub fn intelligent_high(alpha0: f64, p1: f64, p2: f64) -> f64 {
    let a = alpha0;
    let num = 4.0 * a * p1 * p1 * p2 - 4.0 * a * p1 * p2 + 2.0 * a * p1 - 2.0 * a * p1 * p1 + p2;
    let den = 4.0 * a * p1 * p1 * p2 - 4.0 * a * p1 * p2 - 2.0 * p1 * p1 + p2 + 2.0 * p1;
    num / den
}

/// Set pmf with the flip probability taken as `p1` regardless of the set.
pub fn eas_pmf(det: &DetectionParams, alpha_e: f64, p1: f64) -> ConditionalPmf {
    conditional_pmf(det, alpha_e, p1)
}

/// Group-vote pmf assuming independent agreeing sensors.
pub fn ras_group_vote(det: &DetectionParams, alpha_ss: f64, p1: f64) -> ConditionalPmf {
    group_vote_pmf(&conditional_pmf(det, alpha_ss, p1))
}

/// A printed value next to the exact one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub quantity: String,
    pub printed: f64,
    pub exact: f64,
}

impl Discrepancy {
    pub fn gap(&self) -> f64 {
        if self.printed.is_nan() && self.exact.is_nan() {
            0.0
        } else {
            (self.printed - self.exact).abs()
        }
    }
}

const REPORT_TOLERANCE: f64 = 1e-12;

/// Every printed quantity that can be evaluated at this point, paired with
/// its exact counterpart.
pub fn compare(det: &DetectionParams, atk: &AttackParams) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let exact_or_nan = |x: Option<f64>| x.unwrap_or(f64::NAN);
    let intel = intelligent_posterior(atk);
    let low = exact_or_nan(intel.alpha(SetId::Tas(TasSet::Low)));
    let high = exact_or_nan(intel.alpha(SetId::Tas(TasSet::High)));
    if atk.is_legacy() {
        out.push(Discrepancy { quantity: "tas_low".into(), printed: tas_low(atk.alpha0, atk.p1), exact: low });
        out.push(Discrepancy { quantity: "tas_high".into(), printed: tas_high(atk.alpha0, atk.p1), exact: high });
    }
    out.push(Discrepancy {
        quantity: "intelligent_low".into(),
        printed: intelligent_low(atk.alpha0, atk.p1, atk.p2),
        exact: low,
    });
    out.push(Discrepancy {
        quantity: "intelligent_high".into(),
        printed: intelligent_high(atk.alpha0, atk.p1, atk.p2),
        exact: high,
    });
    let eas = eas_posterior(atk);
    for e in &eas.entries {
        if let (Some(alpha), Ok(exact)) = (e.alpha, e.pmf(det)) {
            let printed = eas_pmf(det, alpha, atk.p1);
            out.push(Discrepancy { quantity: format!("{}_pi11", e.set), printed: printed.pi11, exact: exact.pi11 });
            out.push(Discrepancy { quantity: format!("{}_pi10", e.set), printed: printed.pi10, exact: exact.pi10 });
        }
    }
    out
}

pub(crate) fn log_tas_discrepancies(atk: &AttackParams, post: &SetPosterior) {
    if !log::log_enabled!(log::Level::Debug) {
        return;
    }
    for (name, printed, set) in [
        ("tas_low", tas_low(atk.alpha0, atk.p1), TasSet::Low),
        ("tas_high", tas_high(atk.alpha0, atk.p1), TasSet::High),
    ] {
        let exact = post.alpha(SetId::Tas(set)).unwrap_or(f64::NAN);
        if !((printed - exact).abs() <= REPORT_TOLERANCE) {
            log::debug!("{name} at {atk:?}: printed {printed:e}, exact {exact:e}");
        }
    }
}

pub(crate) fn log_eas_discrepancies(det: &DetectionParams, atk: &AttackParams, post: &SetPosterior) {
    if !log::log_enabled!(log::Level::Debug) {
        return;
    }
    for e in &post.entries {
        if let (Some(alpha), Ok(exact)) = (e.alpha, e.pmf(det)) {
            let printed = eas_pmf(det, alpha, atk.p1);
            if (printed.pi11 - exact.pi11).abs() > REPORT_TOLERANCE || (printed.pi10 - exact.pi10).abs() > REPORT_TOLERANCE {
                log::debug!("{} pmf at {atk:?}: printed {printed:?}, exact {exact:?}", e.set);
            }
        }
    }
}
