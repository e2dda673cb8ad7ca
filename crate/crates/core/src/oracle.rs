//! Exact enumeration over a single two-sensor group.
//!
//! Every identity assignment, local decision and flip indicator is
//! enumerated, the protocol wiring (direct bit, relayed bit, MMSD
//! comparison) is replayed per lattice point, and the probability mass is
//! accumulated per observable outcome. Nothing here uses pre-summed
//! expressions, so this table is the ground truth the closed forms in
//! [`crate::analytic`] are checked against.
//!
//! Naming follows the wire: `z_i` is the copy of `i`'s bit that reaches the
//! MMSD through `j`, so `d_j = [u_i == z_i]` and `d_i = [u_j == z_j]`.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::AnalysisError;
use crate::model::{AttackParams, DetectionParams, EasSet, Hypothesis, Identity, TasSet};

/// Observable outcome of one group exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeKey {
    pub hypothesis: Hypothesis,
    pub identity_i: Identity,
    pub identity_j: Identity,
    pub v_i: bool,
    pub v_j: bool,
    pub u_i: bool,
    pub u_j: bool,
    pub z_i: bool,
    pub z_j: bool,
}

impl OutcomeKey {
    pub fn d_i(&self) -> bool {
        self.u_j == self.z_j
    }

    pub fn d_j(&self) -> bool {
        self.u_i == self.z_i
    }

    pub fn eas_set_i(&self) -> EasSet {
        EasSet::from_status(self.d_i(), self.d_j())
    }

    pub fn matched(&self) -> bool {
        self.u_i == self.u_j
    }

    pub fn any_byzantine(&self) -> bool {
        self.identity_i.is_byzantine() || self.identity_j.is_byzantine()
    }
}

/// Events the oracle can condition on, always from sensor `i`'s point of
/// view.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conditioning {
    /// `d_i` equals the given value.
    Status(bool),
    Tas(TasSet),
    Eas(EasSet),
    /// Both sensors in `SS_low` and `u_i == u_j`.
    EasMatched,
    /// Both sensors in `SS_low` and at least one of them Byzantine.
    SsLowWithByzantine,
}

impl Conditioning {
    pub fn holds(&self, k: &OutcomeKey) -> bool {
        match *self {
            Conditioning::Status(d) => k.d_i() == d,
            Conditioning::Tas(s) => TasSet::from_status(k.d_i()) == s,
            Conditioning::Eas(s) => k.eas_set_i() == s,
            Conditioning::EasMatched => k.eas_set_i() == EasSet::SsLow && k.matched(),
            Conditioning::SsLowWithByzantine => k.eas_set_i() == EasSet::SsLow && k.any_byzantine(),
        }
    }

    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

/// Exact joint distribution of one group's outcomes, per hypothesis.
#[derive(Clone, Debug)]
pub struct JointOutcomeTable {
    det: DetectionParams,
    entries: BTreeMap<OutcomeKey, f64>,
}

fn bernoulli(p: f64, bit: bool) -> f64 {
    if bit {
        p
    } else {
        1.0 - p
    }
}

/// Sum with O(log n) error growth.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        values.iter().sum()
    } else {
        let (a, b) = values.split_at(values.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

const BITS: [bool; 2] = [false, true];

/// Enumerates identities, local decisions and all six flip indicators.
pub fn enumerate_group(det: &DetectionParams, atk: &AttackParams) -> JointOutcomeTable {
    let mut buckets: BTreeMap<OutcomeKey, Vec<f64>> = BTreeMap::new();
    let alpha = atk.alpha0;

    for h in Hypothesis::BOTH {
        let p_one = det.local_one(h);
        for id_i in Identity::BOTH {
            for id_j in Identity::BOTH {
                let p_ids = identity_weight(alpha, id_i) * identity_weight(alpha, id_j);
                for v_i in BITS {
                    for v_j in BITS {
                        let p_v = bernoulli(p_one, v_i) * bernoulli(p_one, v_j);
                        // own-bit flips (u, w) and relay flip for each sensor
                        for mask in 0u8..64 {
                            let bit = |k: u8| mask & (1 << k) != 0;
                            let (fu_i, fw_i, g_i) = (bit(0), bit(1), bit(2));
                            let (fu_j, fw_j, g_j) = (bit(3), bit(4), bit(5));
                            let p_i = flip_weight(id_i, atk, fu_i, fw_i, g_i);
                            let p_j = flip_weight(id_j, atk, fu_j, fw_j, g_j);
                            let p = p_ids * p_v * p_i * p_j;
                            if p == 0.0 {
                                continue;
                            }
                            let u_i = v_i ^ fu_i;
                            let w_i = v_i ^ fw_i;
                            let u_j = v_j ^ fu_j;
                            let w_j = v_j ^ fw_j;
                            // j relays w_i, i relays w_j
                            let z_i = w_i ^ g_j;
                            let z_j = w_j ^ g_i;
                            let key = OutcomeKey {
                                hypothesis: h,
                                identity_i: id_i,
                                identity_j: id_j,
                                v_i,
                                v_j,
                                u_i,
                                u_j,
                                z_i,
                                z_j,
                            };
                            buckets.entry(key).or_default().push(p);
                        }
                    }
                }
            }
        }
    }

    let entries = buckets.into_iter().map(|(k, v)| (k, pairwise_sum(&v))).collect();
    JointOutcomeTable { det: *det, entries }
}

fn identity_weight(alpha: f64, id: Identity) -> f64 {
    match id {
        Identity::Byzantine => alpha,
        Identity::Honest => 1.0 - alpha,
    }
}

fn flip_weight(id: Identity, atk: &AttackParams, fu: bool, fw: bool, g: bool) -> f64 {
    match id {
        Identity::Honest => {
            if fu || fw || g {
                0.0
            } else {
                1.0
            }
        }
        Identity::Byzantine => bernoulli(atk.p1, fu) * bernoulli(atk.p1, fw) * bernoulli(atk.p2, g),
    }
}

impl JointOutcomeTable {
    pub fn entries(&self) -> impl Iterator<Item = (&OutcomeKey, f64)> {
        self.entries.iter().map(|(k, p)| (k, *p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `P(pred | h)`.
    pub fn probability_given(&self, h: Hypothesis, pred: impl Fn(&OutcomeKey) -> bool) -> f64 {
        let v: Vec<f64> = self
            .entries
            .iter()
            .filter(|(k, _)| k.hypothesis == h && pred(k))
            .map(|(_, p)| *p)
            .collect();
        pairwise_sum(&v)
    }

    /// Prior-weighted `P(pred)`.
    pub fn probability(&self, pred: impl Fn(&OutcomeKey) -> bool) -> f64 {
        let v: Vec<f64> = self
            .entries
            .iter()
            .filter(|(k, _)| pred(k))
            .map(|(k, p)| self.det.prior(k.hypothesis) * p)
            .collect();
        pairwise_sum(&v)
    }

    /// `P(event | given)`, prior-weighted when `h` is `None`. `None` when
    /// the conditioning event has zero probability.
    pub fn conditional(
        &self,
        h: Option<Hypothesis>,
        event: impl Fn(&OutcomeKey) -> bool,
        given: impl Fn(&OutcomeKey) -> bool,
    ) -> Option<f64> {
        let (joint, base) = match h {
            Some(h) => (
                self.probability_given(h, |k| given(k) && event(k)),
                self.probability_given(h, &given),
            ),
            None => (self.probability(|k| given(k) && event(k)), self.probability(&given)),
        };
        (base > 0.0).then(|| joint / base)
    }

    /// Total mass per hypothesis; both entries equal 1 up to rounding.
    pub fn mass(&self) -> [f64; 2] {
        [
            self.probability_given(Hypothesis::H0, |_| true),
            self.probability_given(Hypothesis::H1, |_| true),
        ]
    }

    /// Dumps one row per outcome with the probability in scientific notation.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["hypothesis", "identity_i", "identity_j", "v_i", "v_j", "u_i", "u_j", "z_i", "z_j", "probability"])?;
        let b = |x: bool| if x { "1" } else { "0" };
        let id = |x: Identity| if x.is_byzantine() { "B" } else { "H" };
        for (k, p) in &self.entries {
            w.write_record([
                format!("{:?}", k.hypothesis).as_str(),
                id(k.identity_i),
                id(k.identity_j),
                b(k.v_i),
                b(k.v_j),
                b(k.u_i),
                b(k.u_j),
                b(k.z_i),
                b(k.z_j),
                format!("{p:e}").as_str(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Exact `P(i = B | event)` by summation over the table.
pub fn posterior_from_oracle(table: &JointOutcomeTable, conditioning: Conditioning) -> Result<f64, AnalysisError> {
    table
        .conditional(None, |k| k.identity_i.is_byzantine(), |k| conditioning.holds(k))
        .ok_or_else(|| AnalysisError::UndefinedPosterior(conditioning.describe()))
}

/// Exact `P(u_i = 1 | event, h)`.
pub fn conditional_decision_pmf(
    table: &JointOutcomeTable,
    conditioning: Conditioning,
    h: Hypothesis,
) -> Result<f64, AnalysisError> {
    table
        .conditional(Some(h), |k| k.u_i, |k| conditioning.holds(k))
        .ok_or_else(|| AnalysisError::UndefinedPosterior(conditioning.describe()))
}

/// Exact occupancy probability of a conditioning event.
pub fn occupancy(table: &JointOutcomeTable, conditioning: Conditioning) -> f64 {
    table.probability(|k| conditioning.holds(k))
}
