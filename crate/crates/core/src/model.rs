//! Domain types shared by every other module.
//!
//! Nothing here computes anything beyond validation: parameter structs,
//! the network configuration, the per-group message transcript produced by
//! the simulator, and the set labels the MMSD assigns from status
//! indicators.

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, Violation};

/// Binary hypothesis: signal absent (`H0`) or present (`H1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hypothesis {
    H0,
    H1,
}

impl Hypothesis {
    pub const BOTH: [Hypothesis; 2] = [Hypothesis::H0, Hypothesis::H1];

    pub fn index(self) -> usize {
        match self {
            Hypothesis::H0 => 0,
            Hypothesis::H1 => 1,
        }
    }
}

/// Behavioral identity of a sensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Identity {
    Honest,
    Byzantine,
}

impl Identity {
    pub const BOTH: [Identity; 2] = [Identity::Honest, Identity::Byzantine];

    pub fn is_byzantine(self) -> bool {
        matches!(self, Identity::Byzantine)
    }
}

/// Sensor quality and hypothesis priors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectionParams {
    /// P(v = 1 | H1).
    pub p_d: f64,
    /// P(v = 1 | H0).
    pub p_f: f64,
    /// Prior probability of H0.
    pub prior0: f64,
    /// Prior probability of H1.
    pub prior1: f64,
}

impl DetectionParams {
    pub fn new(p_d: f64, p_f: f64) -> Self {
        DetectionParams { p_d, p_f, prior0: 0.5, prior1: 0.5 }
    }

    pub fn with_priors(mut self, prior0: f64, prior1: f64) -> Self {
        self.prior0 = prior0;
        self.prior1 = prior1;
        self
    }

    /// P(v = 1 | hypothesis).
    pub fn local_one(&self, h: Hypothesis) -> f64 {
        match h {
            Hypothesis::H0 => self.p_f,
            Hypothesis::H1 => self.p_d,
        }
    }

    pub fn prior(&self, h: Hypothesis) -> f64 {
        match h {
            Hypothesis::H0 => self.prior0,
            Hypothesis::H1 => self.prior1,
        }
    }

    /// `log(prior0 / prior1)`, the constant term of every threshold.
    pub fn log_prior_ratio(&self) -> f64 {
        (self.prior0 / self.prior1).ln()
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (field, value) in [
            ("detection.p_d", self.p_d),
            ("detection.p_f", self.p_f),
            ("detection.prior0", self.prior0),
            ("detection.prior1", self.prior1),
        ] {
            if !is_probability(value) {
                out.push(Violation::new(field, format!("must be a probability in [0, 1], got {value}")));
            }
        }
        if self.p_f >= self.p_d {
            out.push(Violation::new("detection.p_f", "p_f < p_d required"));
        }
        if (self.prior0 + self.prior1 - 1.0).abs() > 1e-12 {
            out.push(Violation::new("detection.prior0", "prior0 + prior1 must equal 1"));
        }
        out
    }
}

/// Byzantine fraction and flip probabilities.
///
/// `p1` is applied independently to the attacker's direct bit `u` and to the
/// bit it hands to its partner `w`; `p2` is applied to the partner's bit it
/// relays. The legacy model is the special case `p1 == p2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackParams {
    pub alpha0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl AttackParams {
    pub fn new(alpha0: f64, p1: f64, p2: f64) -> Self {
        AttackParams { alpha0, p1, p2 }
    }

    /// Legacy attacker that flips everything with the same probability.
    pub fn legacy(alpha0: f64, p: f64) -> Self {
        AttackParams { alpha0, p1: p, p2: p }
    }

    pub fn is_legacy(&self) -> bool {
        self.p1 == self.p2
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (field, value) in [("attack.alpha0", self.alpha0), ("attack.p1", self.p1), ("attack.p2", self.p2)] {
            if !is_probability(value) {
                out.push(Violation::new(field, format!("must be a probability in [0, 1], got {value}")));
            }
        }
        out
    }
}

/// How Byzantine identities are drawn in each simulated trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityMode {
    /// Each sensor is Byzantine independently with probability `alpha0`.
    #[default]
    IidBernoulli,
    /// Exactly `round(alpha0 * N)` Byzantines at uniformly random positions.
    FixedCount,
}

/// Which set cardinalities enter the fusion threshold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMode {
    /// `N * P(set)` expectations.
    #[default]
    Expected,
    /// Cardinalities observed in the trial.
    Realized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub n_sensors: usize,
    #[serde(default = "one")]
    pub n_clusters: usize,
    #[serde(default)]
    pub identity_mode: IdentityMode,
    #[serde(default)]
    pub threshold_mode: ThresholdMode,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> usize {
    1
}

impl NetworkConfig {
    pub fn new(n_sensors: usize) -> Self {
        NetworkConfig {
            n_sensors,
            n_clusters: 1,
            identity_mode: IdentityMode::IidBernoulli,
            threshold_mode: ThresholdMode::Expected,
            seed: 0,
        }
    }

    pub fn n_groups(&self) -> usize {
        self.n_sensors / 2
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n_sensors < 2 {
            out.push(Violation::new("network.n_sensors", "n_sensors must be at least 2"));
        }
        if !self.n_sensors.is_multiple_of(2) {
            out.push(Violation::new("network.n_sensors", "n_sensors must be even"));
        }
        if self.n_clusters == 0 {
            out.push(Violation::new("network.n_clusters", "n_clusters must be at least 1"));
        } else if !self.n_sensors.is_multiple_of(2 * self.n_clusters) {
            out.push(Violation::new(
                "network.n_clusters",
                format!(
                    "n_sensors ({}) must be divisible by 2 * n_clusters ({})",
                    self.n_sensors,
                    2 * self.n_clusters
                ),
            ));
        }
        out
    }
}

/// The full JSON configuration document.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub network: NetworkConfig,
    pub detection: DetectionParams,
    pub attack: AttackParams,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }
}

/// A configuration that passed [`validate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckedConfig {
    pub network: NetworkConfig,
    pub detection: DetectionParams,
    pub attack: AttackParams,
}

impl CheckedConfig {
    /// Number of Byzantines placed in `FixedCount` mode.
    pub fn fixed_byzantine_count(&self) -> usize {
        (self.attack.alpha0 * self.network.n_sensors as f64).round() as usize
    }
}

/// Checks every invariant and returns either the checked configuration or
/// the full list of violations.
pub fn validate(
    config: NetworkConfig,
    det: DetectionParams,
    atk: AttackParams,
) -> Result<CheckedConfig, ConfigError> {
    let mut violations = config.violations();
    violations.extend(det.violations());
    violations.extend(atk.violations());
    if violations.is_empty() {
        Ok(CheckedConfig { network: config, detection: det, attack: atk })
    } else {
        Err(ConfigError::Invalid(violations))
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<CheckedConfig, ConfigError> {
        validate(self.network, self.detection, self.attack)
    }
}

fn is_probability(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

/// One sensor's side of a group exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensorTranscript {
    pub identity: Identity,
    /// True local decision.
    pub v: bool,
    /// Bit sent directly to the MMSD.
    pub u: bool,
    /// Bit handed to the partner for relaying.
    pub w: bool,
    /// The partner's `w` as forwarded by this sensor to the MMSD, after this
    /// sensor's possible flip.
    pub forwarded: bool,
}

impl SensorTranscript {
    pub fn honest(v: bool, partner_w: bool) -> Self {
        SensorTranscript { identity: Identity::Honest, v, u: v, w: v, forwarded: partner_w }
    }
}

/// Messages exchanged inside one group of two sensors `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTranscript {
    pub i: SensorTranscript,
    pub j: SensorTranscript,
}

impl GroupTranscript {
    /// Status indicator of `i`: the copy of `j`'s bit forwarded by `i`
    /// matches `j`'s direct bit.
    pub fn d_i(&self) -> bool {
        self.j.u == self.i.forwarded
    }

    /// Status indicator of `j`.
    pub fn d_j(&self) -> bool {
        self.i.u == self.j.forwarded
    }

    /// Whether the two direct decisions agree.
    pub fn matched(&self) -> bool {
        self.i.u == self.j.u
    }

    pub fn labels(&self) -> (SetLabel, SetLabel) {
        let (di, dj) = (self.d_i(), self.d_j());
        (
            SetLabel::classify(di, dj, self.i.u, self.j.u),
            SetLabel::classify(dj, di, self.j.u, self.i.u),
        )
    }

    pub fn eas_sets(&self) -> (EasSet, EasSet) {
        let (di, dj) = (self.d_i(), self.d_j());
        (EasSet::from_status(di, dj), EasSet::from_status(dj, di))
    }
}

/// Two-set partition used by TAS, from a sensor's own status indicator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TasSet {
    /// `d = 1`.
    Low,
    /// `d = 0`.
    High,
}

impl TasSet {
    pub const ALL: [TasSet; 2] = [TasSet::Low, TasSet::High];

    pub fn from_status(d: bool) -> Self {
        if d {
            TasSet::Low
        } else {
            TasSet::High
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TasSet::Low => "low",
            TasSet::High => "high",
        }
    }
}

/// Four-set partition used by EAS and RAS, keyed by the sensor's own status
/// indicator and its partner's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EasSet {
    /// Both indicators are 1.
    SsLow,
    /// Own indicator 1, partner's 0.
    LowHigh,
    /// Own indicator 0, partner's 1.
    HighLow,
    /// Both indicators are 0.
    SsHigh,
}

impl EasSet {
    pub const ALL: [EasSet; 4] = [EasSet::SsLow, EasSet::LowHigh, EasSet::HighLow, EasSet::SsHigh];

    /// `own` is the sensor's indicator, `partner` the group member's.
    pub fn from_status(own: bool, partner: bool) -> Self {
        match (own, partner) {
            (true, true) => EasSet::SsLow,
            (true, false) => EasSet::LowHigh,
            (false, true) => EasSet::HighLow,
            (false, false) => EasSet::SsHigh,
        }
    }

    pub fn index(self) -> usize {
        match self {
            EasSet::SsLow => 0,
            EasSet::LowHigh => 1,
            EasSet::HighLow => 2,
            EasSet::SsHigh => 3,
        }
    }

    /// The set the partner lands in.
    pub fn mirrored(self) -> Self {
        match self {
            EasSet::LowHigh => EasSet::HighLow,
            EasSet::HighLow => EasSet::LowHigh,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EasSet::SsLow => "ss_low",
            EasSet::LowHigh => "low_high",
            EasSet::HighLow => "high_low",
            EasSet::SsHigh => "ss_high",
        }
    }
}

/// Every label the MMSD derives for one sensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetLabel {
    pub tas: TasSet,
    pub eas: EasSet,
    /// `u_i == u_j`.
    pub matched: bool,
}

impl SetLabel {
    pub fn classify(own_d: bool, partner_d: bool, own_u: bool, partner_u: bool) -> Self {
        SetLabel {
            tas: TasSet::from_status(own_d),
            eas: EasSet::from_status(own_d, partner_d),
            matched: own_u == partner_u,
        }
    }

    /// Whether RAS forwards this sensor's decision (as an individual vote or
    /// as part of a group vote).
    pub fn ras_kept(&self) -> bool {
        match self.eas {
            EasSet::SsLow => self.matched,
            EasSet::LowHigh | EasSet::HighLow => true,
            EasSet::SsHigh => false,
        }
    }
}
