use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::SetId;
use crate::model::{
    AttackParams, CheckedConfig, EasSet, GroupTranscript, Hypothesis, Identity, IdentityMode, SensorTranscript, TasSet,
};

/// Independent stream for trial `index` under a master seed.
pub fn trial_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Votes from one set: how many, and how many of them are 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub count: u32,
    pub ones: u32,
}

impl Tally {
    fn add(&mut self, bit: bool) {
        self.count += 1;
        self.ones += bit as u32;
    }
}

/// Realized cardinalities of every set in one trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SetTallies {
    pub all: Tally,
    pub tas: [Tally; 2],
    pub eas: [Tally; 4],
    /// Matched `SS_low` groups, one vote each.
    pub group_votes: Tally,
    /// `SS_low` groups whose direct bits disagree.
    pub mismatched_groups: u32,
}

impl SetTallies {
    pub fn from_groups(groups: &[GroupTranscript]) -> Self {
        let mut t = SetTallies::default();
        for g in groups {
            t.add_group(g);
        }
        t
    }

    pub fn add_group(&mut self, g: &GroupTranscript) {
        let (li, lj) = g.labels();
        for (label, u) in [(li, g.i.u), (lj, g.j.u)] {
            self.all.add(u);
            self.tas[if label.tas == TasSet::Low { 0 } else { 1 }].add(u);
            self.eas[label.eas.index()].add(u);
        }
        if li.eas == EasSet::SsLow {
            if g.matched() {
                self.group_votes.add(g.i.u);
            } else {
                self.mismatched_groups += 1;
            }
        }
    }

    pub fn get(&self, set: SetId) -> Tally {
        match set {
            SetId::All => self.all,
            SetId::Tas(TasSet::Low) => self.tas[0],
            SetId::Tas(TasSet::High) => self.tas[1],
            SetId::Eas(s) => self.eas[s.index()],
            SetId::GroupVote => self.group_votes,
        }
    }

    /// Decision bits RAS forwards, counting a group vote once.
    pub fn ras_bits_group_level(&self) -> u32 {
        self.group_votes.count + self.eas[1].count + self.eas[2].count
    }

    /// Same, counting both members of a matched pair.
    pub fn ras_bits_sensor_level(&self) -> u32 {
        2 * self.group_votes.count + self.eas[1].count + self.eas[2].count
    }
}

/// One simulated detection round.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub index: u64,
    pub hypothesis: Hypothesis,
    pub groups: Vec<GroupTranscript>,
    pub tallies: SetTallies,
}

fn draw_identities<R: Rng>(rng: &mut R, cfg: &CheckedConfig) -> Vec<Identity> {
    let n = cfg.network.n_sensors;
    match cfg.network.identity_mode {
        IdentityMode::IidBernoulli => (0..n)
            .map(|_| if rng.random_bool(cfg.attack.alpha0) { Identity::Byzantine } else { Identity::Honest })
            .collect(),
        IdentityMode::FixedCount => {
            let mut ids = vec![Identity::Honest; n];
            for k in sample(rng, n, cfg.fixed_byzantine_count().min(n)) {
                ids[k] = Identity::Byzantine;
            }
            ids
        }
    }
}

struct Flips {
    u: bool,
    w: bool,
    relay: bool,
}

fn draw_flips<R: Rng>(rng: &mut R, id: Identity, atk: &AttackParams) -> Flips {
    match id {
        Identity::Honest => Flips { u: false, w: false, relay: false },
        Identity::Byzantine => Flips { u: rng.random_bool(atk.p1), w: rng.random_bool(atk.p1), relay: rng.random_bool(atk.p2) },
    }
}

/// Builds the transcript of one group from decisions and flips.
pub fn group_transcript(
    ids: (Identity, Identity),
    v: (bool, bool),
    flips_i: (bool, bool, bool),
    flips_j: (bool, bool, bool),
) -> GroupTranscript {
    let (fu_i, fw_i, g_i) = flips_i;
    let (fu_j, fw_j, g_j) = flips_j;
    let (w_i, w_j) = (v.0 ^ fw_i, v.1 ^ fw_j);
    GroupTranscript {
        i: SensorTranscript { identity: ids.0, v: v.0, u: v.0 ^ fu_i, w: w_i, forwarded: w_j ^ g_i },
        j: SensorTranscript { identity: ids.1, v: v.1, u: v.1 ^ fu_j, w: w_j, forwarded: w_i ^ g_j },
    }
}

/// Draws a trial from an explicit generator.
pub fn simulate_trial<R: Rng>(rng: &mut R, cfg: &CheckedConfig, index: u64) -> TrialRecord {
    let det = &cfg.detection;
    let hypothesis = if rng.random_bool(det.prior1) { Hypothesis::H1 } else { Hypothesis::H0 };
    let ids = draw_identities(rng, cfg);
    let p_one = det.local_one(hypothesis);
    let groups: Vec<GroupTranscript> = ids
        .chunks_exact(2)
        .map(|pair| {
            let v = (rng.random_bool(p_one), rng.random_bool(p_one));
            let fi = draw_flips(rng, pair[0], &cfg.attack);
            let fj = draw_flips(rng, pair[1], &cfg.attack);
            group_transcript((pair[0], pair[1]), v, (fi.u, fi.w, fi.relay), (fj.u, fj.w, fj.relay))
        })
        .collect();
    let tallies = SetTallies::from_groups(&groups);
    TrialRecord { index, hypothesis, groups, tallies }
}

/// Trial `index` of the experiment seeded by `cfg.network.seed`.
pub fn run_trial(cfg: &CheckedConfig, index: u64) -> TrialRecord {
    simulate_trial(&mut trial_rng(cfg.network.seed, index), cfg, index)
}

impl TrialRecord {
    pub fn tally(&self, set: SetId) -> Tally {
        self.tallies.get(set)
    }

    /// The groups handled by cluster `c` when the network is split into
    /// `n_clusters` equal contiguous blocks.
    pub fn cluster_groups(&self, c: usize, n_clusters: usize) -> &[GroupTranscript] {
        let per = self.groups.len() / n_clusters;
        &self.groups[c * per..(c + 1) * per]
    }
}
