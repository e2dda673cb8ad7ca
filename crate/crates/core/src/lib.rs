//! Audit-bit based distributed Bayesian detection under Byzantine attacks.
//!
//! Sensors are paired; each sends its decision to a match-and-mismatch
//! detector directly and through its partner. Mismatches between the two
//! copies sort sensors into sets with different chances of being
//! Byzantine, and the fusion center weights (or drops) votes accordingly.
//!
//! - [`model`]: parameters, configuration, transcripts, set labels
//! - [`oracle`]: brute-force enumeration of one group
//! - [`analytic`]: closed forms for posteriors, pmfs and error probability
//! - [`simcore`]: Monte Carlo trials and fusion
//! - [`adversary`]: the attacker's grid search
//! - [`clusternet`]: per-cluster report packets and overhead accounting

pub mod adversary;
pub mod analytic;
pub mod clusternet;
pub mod error;
pub mod model;
pub mod oracle;
pub mod report;
pub mod simcore;

pub use analytic::{Scheme, SchemePerformance, SetId};
pub use error::{AnalysisError, ConfigError, DecodeError, EncodeError};
pub use model::{AttackParams, DetectionParams, ExperimentConfig, Hypothesis, Identity, NetworkConfig};
