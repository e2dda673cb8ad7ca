//! Monte Carlo simulation of the grouped network.

mod experiment;
mod fusion;
mod trial;

pub use experiment::{run_experiment, EmpiricalPerf, ExperimentResult, OccupancyCounts};
pub use fusion::{decide, fuse, FusionOutcome};
pub use trial::{group_transcript, run_trial, simulate_trial, trial_rng, SetTallies, Tally, TrialRecord};
