//! Factorized event algebra of one group.
//!
//! Given the two identities, the status indicator `d_j = [m_i == g_j]`
//! depends only on `i`'s own-bit inconsistency `m_i = f_u ^ f_w` and `j`'s
//! relay flip, while `u_i` depends on `v_i` and `f_u`. The group joint
//! therefore splits into two half-pair factors `K(i -> j)[u_i][d_j]` and
//! `K(j -> i)[u_j][d_i]`.

use crate::model::{AttackParams, DetectionParams, Hypothesis, Identity};

/// `P(m = 1 | B)`: the two own-bit flips disagree.
pub fn inconsistency(p1: f64) -> f64 {
    2.0 * p1 * (1.0 - p1)
}

fn relay_flip(atk: &AttackParams, id: Identity) -> f64 {
    if id.is_byzantine() {
        atk.p2
    } else {
        0.0
    }
}

/// `P(d_y = 1 | id_x, id_y)` where `y` relays `x`'s audit bit.
pub fn status_one(atk: &AttackParams, x: Identity, y: Identity) -> f64 {
    let g = relay_flip(atk, y);
    let s = if x.is_byzantine() { inconsistency(atk.p1) } else { 0.0 };
    (1.0 - s) * (1.0 - g) + s * g
}

/// `P(f_u = 1, d_y = d | x = B, id_y)`.
pub fn flip_and_status(atk: &AttackParams, y: Identity, d: bool) -> f64 {
    let p1 = atk.p1;
    let g = relay_flip(atk, y);
    // f_u = 1 with m = 0 needs f_w = 1; with m = 1 needs f_w = 0
    let (consistent, inconsistent) = (p1 * p1, p1 * (1.0 - p1));
    let one = consistent * (1.0 - g) + inconsistent * g;
    if d {
        one
    } else {
        p1 - one
    }
}

pub fn identity_prob(alpha0: f64, id: Identity) -> f64 {
    if id.is_byzantine() {
        alpha0
    } else {
        1.0 - alpha0
    }
}

/// Half-pair factor `P(u_x = u, d_y = d | id_x, id_y, h)` indexed `[u][d]`.
pub fn half_pair(det: &DetectionParams, atk: &AttackParams, x: Identity, y: Identity, h: Hypothesis) -> [[f64; 2]; 2] {
    let pv = det.local_one(h);
    // joint of (f_u, d_y) given identities
    let mut flip_status = [[0.0; 2]; 2];
    if x.is_byzantine() {
        for d in [false, true] {
            let one = flip_and_status(atk, y, d);
            let total = if d { status_one(atk, x, y) } else { 1.0 - status_one(atk, x, y) };
            flip_status[1][d as usize] = one;
            flip_status[0][d as usize] = total - one;
        }
    } else {
        let c = status_one(atk, x, y);
        flip_status[0] = [1.0 - c, c];
    }
    let mut k = [[0.0; 2]; 2];
    for (f, row) in flip_status.iter().enumerate() {
        for d in 0..2 {
            // u = v ^ f
            let p_u1 = if f == 1 { 1.0 - pv } else { pv };
            k[1][d] += row[d] * p_u1;
            k[0][d] += row[d] * (1.0 - p_u1);
        }
    }
    k
}

/// Outcome of one group as seen by the MMSD.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupOutcome {
    pub identity_i: Identity,
    pub identity_j: Identity,
    pub u_i: bool,
    pub u_j: bool,
    pub d_i: bool,
    pub d_j: bool,
}

/// Joint law of `(ids, u_i, u_j, d_i, d_j)` under each hypothesis.
#[derive(Clone, Debug)]
pub struct GroupLaw {
    det: DetectionParams,
    cells: Vec<(GroupOutcome, [f64; 2])>,
}

impl GroupLaw {
    pub fn new(det: &DetectionParams, atk: &AttackParams) -> Self {
        let mut cells = Vec::with_capacity(64);
        for id_i in Identity::BOTH {
            for id_j in Identity::BOTH {
                let p_ids = identity_prob(atk.alpha0, id_i) * identity_prob(atk.alpha0, id_j);
                let ks = Hypothesis::BOTH.map(|h| {
                    (half_pair(det, atk, id_i, id_j, h), half_pair(det, atk, id_j, id_i, h))
                });
                for bits in 0u8..16 {
                    let b = |k: u8| bits & (1 << k) != 0;
                    let (u_i, u_j, d_i, d_j) = (b(0), b(1), b(2), b(3));
                    let p = ks.map(|(ki, kj)| p_ids * ki[u_i as usize][d_j as usize] * kj[u_j as usize][d_i as usize]);
                    cells.push((GroupOutcome { identity_i: id_i, identity_j: id_j, u_i, u_j, d_i, d_j }, p));
                }
            }
        }
        GroupLaw { det: *det, cells }
    }

    pub fn given(&self, h: Hypothesis, pred: impl Fn(&GroupOutcome) -> bool) -> f64 {
        self.cells.iter().filter(|(o, _)| pred(o)).map(|(_, p)| p[h.index()]).sum()
    }

    /// Prior-weighted probability.
    pub fn prob(&self, pred: impl Fn(&GroupOutcome) -> bool) -> f64 {
        self.cells
            .iter()
            .filter(|(o, _)| pred(o))
            .map(|(_, p)| self.det.prior0 * p[0] + self.det.prior1 * p[1])
            .sum()
    }

    pub fn conditional(
        &self,
        h: Option<Hypothesis>,
        event: impl Fn(&GroupOutcome) -> bool,
        given: impl Fn(&GroupOutcome) -> bool,
    ) -> Option<f64> {
        let both = |o: &GroupOutcome| given(o) && event(o);
        let (num, den) = match h {
            Some(h) => (self.given(h, both), self.given(h, &given)),
            None => (self.prob(both), self.prob(&given)),
        };
        (den > 0.0).then(|| num / den)
    }
}
