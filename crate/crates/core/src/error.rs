use std::fmt;

use thiserror::Error;

/// One failed configuration invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl Violation {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Violation { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse configuration: {0}")]
    Parse(String),
    #[error("invalid configuration: {}", join(.0))]
    Invalid(Vec<Violation>),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Failures of the closed-form and enumeration engines.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum AnalysisError {
    /// The conditioning event has zero probability.
    #[error("undefined posterior: conditioning event `{0}` has zero probability")]
    UndefinedPosterior(String),
    #[error("scheme `{scheme}` requires {requirement}")]
    UnsupportedParameters { scheme: &'static str, requirement: &'static str },
    /// A boundary pmf would give an infinite log-likelihood weight.
    #[error("infinite weight: pi11 = {pi11}, pi10 = {pi10}")]
    InfiniteWeight { pi11: f64, pi10: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Malformed cluster report frame.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("frame too short to hold a cluster header ({0} bytes)")]
    TruncatedHeader(usize),
    #[error("cluster {cluster_id}, packet {packet}: {reason}")]
    Packet { cluster_id: u16, packet: usize, reason: String },
    #[error("cluster {cluster_id}: {extra} trailing bytes after the last packet")]
    TrailingBytes { cluster_id: u16, extra: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("cluster {cluster_id}: packet {packet} holds {count} decisions, more than a 16-bit count can carry")]
    TooManyDecisions { cluster_id: u16, packet: usize, count: usize },
}
