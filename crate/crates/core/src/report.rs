//! Parameter sweeps and their CSV form.
//!
//! Every file starts with a `#` comment naming the schema and version,
//! followed by a header row. Analytic sweeps and simulation runs share one
//! schema; the empirical columns are empty for analytic rows.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analytic::{scheme_performance, Scheme, SchemePerformance, SetId};
use crate::error::AnalysisError;
use crate::model::{AttackParams, DetectionParams, EasSet, TasSet};
use crate::simcore::EmpiricalPerf;

pub const SWEEP_SCHEMA: &str = "# auditbit-sweep v1";

/// Parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVar {
    Alpha0,
    P1,
    P2,
}

impl SweepVar {
    pub fn apply(self, base: AttackParams, value: f64) -> AttackParams {
        match self {
            SweepVar::Alpha0 => AttackParams { alpha0: value, ..base },
            SweepVar::P1 => AttackParams { p1: value, ..base },
            SweepVar::P2 => AttackParams { p2: value, ..base },
        }
    }
}

impl FromStr for SweepVar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha0" => Ok(SweepVar::Alpha0),
            "p1" => Ok(SweepVar::P1),
            "p2" => Ok(SweepVar::P2),
            _ => Err(format!("unknown sweep variable `{s}` (expected alpha0, p1 or p2)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub attack: AttackParams,
    pub perf: SchemePerformance,
    pub empirical: Option<EmpiricalPerf>,
}

/// Evaluates `scheme` at every value, rows sorted by the swept value. For
/// the legacy scheme `p1` and `p2` move together.
pub fn sweep(
    scheme: Scheme,
    det: &DetectionParams,
    base: AttackParams,
    n_sensors: usize,
    var: SweepVar,
    values: &[f64],
) -> Result<Vec<SweepRow>, AnalysisError> {
    if values.is_empty() {
        return Err(AnalysisError::InvalidArgument("empty sweep range".into()));
    }
    let mut values = values.to_vec();
    values.sort_by(f64::total_cmp);
    values
        .par_iter()
        .map(|&v| {
            let mut atk = var.apply(base, v);
            if scheme == Scheme::Tas && var != SweepVar::Alpha0 {
                atk = AttackParams::legacy(atk.alpha0, v);
            }
            let perf = scheme_performance(scheme, det, &atk, n_sensors)?;
            Ok(SweepRow { attack: atk, perf, empirical: None })
        })
        .collect()
}

const SETS: [SetId; 8] = [
    SetId::All,
    SetId::Tas(TasSet::Low),
    SetId::Tas(TasSet::High),
    SetId::Eas(EasSet::SsLow),
    SetId::Eas(EasSet::LowHigh),
    SetId::Eas(EasSet::HighLow),
    SetId::Eas(EasSet::SsHigh),
    SetId::GroupVote,
];

pub fn sweep_header() -> Vec<String> {
    let mut h: Vec<String> = [
        "scheme", "n_sensors", "alpha0", "p1", "p2", "eta", "mu0", "mu1", "var0", "var1", "gamma_f", "gamma_m",
        "p_false_alarm", "p_miss", "p_e", "degenerate",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for s in SETS {
        for field in ["count", "pi11", "pi10", "weight"] {
            h.push(format!("{field}_{}", s.name()));
        }
    }
    h.extend(["trials", "p_e_hat", "standard_error", "rate_h0", "rate_h1"].map(String::from));
    h
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

pub fn sweep_record(row: &SweepRow) -> Vec<String> {
    let p = &row.perf;
    let mut r = vec![
        p.scheme.name().to_string(),
        p.n_sensors.to_string(),
        row.attack.alpha0.to_string(),
        row.attack.p1.to_string(),
        row.attack.p2.to_string(),
        num(p.eta),
        num(p.mu0),
        num(p.mu1),
        num(p.var0),
        num(p.var1),
        num(p.gamma_f),
        num(p.gamma_m),
        num(p.p_false_alarm),
        num(p.p_miss),
        num(p.p_e),
        p.degenerate.to_string(),
    ];
    for s in SETS {
        match p.term(s) {
            Some(t) => r.extend([num(t.count), num(t.pmf.pi11), num(t.pmf.pi10), num(t.weight)]),
            None => r.extend(std::iter::repeat_n(String::new(), 4)),
        }
    }
    match &row.empirical {
        Some(e) => r.extend([
            e.trials.to_string(),
            num(e.p_e_hat()),
            num(e.standard_error()),
            num(e.rate(crate::model::Hypothesis::H0)),
            num(e.rate(crate::model::Hypothesis::H1)),
        ]),
        None => r.extend(std::iter::repeat_n(String::new(), 5)),
    }
    r
}

pub fn write_sweep<W: Write>(mut out: W, rows: &[SweepRow]) -> csv::Result<()> {
    writeln!(out, "{SWEEP_SCHEMA}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(sweep_header())?;
    for row in rows {
        w.write_record(sweep_record(row))?;
    }
    w.flush()?;
    Ok(())
}
