//! The attacker's side: exhaustive search over `(p1, p2)` for the largest
//! fusion error, and full error surfaces.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{scheme_performance, Scheme};
use crate::error::AnalysisError;
use crate::model::{AttackParams, DetectionParams};

/// Values within this relative distance of the maximum count as ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Points `0, step, 2 step, ..., 1`. When `1/step` is an integer the points
/// are computed as `k / (1/step)` so decimal steps land exactly.
pub fn grid(step: f64) -> Result<Vec<f64>, AnalysisError> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(AnalysisError::InvalidArgument(format!("grid step must be in (0, 0.5], got {step}")));
    }
    let inv = 1.0 / step;
    let steps = inv.round();
    if (inv - steps).abs() < 1e-9 {
        return Ok((0..=steps as u64).map(|k| k as f64 / steps).collect());
    }
    let mut out: Vec<f64> = (0..=inv.floor() as u64).map(|k| k as f64 * step).collect();
    if *out.last().unwrap() < 1.0 {
        out.push(1.0);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AttackOptimum {
    pub p1: f64,
    pub p2: f64,
    pub p_e: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub p1: f64,
    pub p2: f64,
    pub p_e: f64,
    pub gamma_f: f64,
    pub gamma_m: f64,
    /// Forward difference of `p_e` along `p2`; absent on the last column
    /// and for schemes tied to `p1 == p2`.
    pub dpe_dp2: Option<f64>,
}

fn attack_points(scheme: Scheme, axis: &[f64]) -> Vec<(f64, f64)> {
    if scheme == Scheme::Tas {
        axis.iter().map(|&p| (p, p)).collect()
    } else {
        axis.iter().flat_map(|&p1| axis.iter().map(move |&p2| (p1, p2))).collect()
    }
}

/// Error surface of `scheme` over the attack grid, rows ordered by `p1`
/// then `p2`. The legacy scheme only has the diagonal `p1 == p2`.
pub fn best_response_surface(
    scheme: Scheme,
    det: &DetectionParams,
    alpha0: f64,
    n_sensors: usize,
    grid_step: f64,
) -> Result<Vec<SurfacePoint>, AnalysisError> {
    let axis = grid(grid_step)?;
    let points = attack_points(scheme, &axis);
    let evaluated = points
        .par_iter()
        .map(|&(p1, p2)| {
            let perf = scheme_performance(scheme, det, &AttackParams::new(alpha0, p1, p2), n_sensors)?;
            Ok(SurfacePoint { p1, p2, p_e: perf.p_e, gamma_f: perf.gamma_f, gamma_m: perf.gamma_m, dpe_dp2: None })
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    let mut surface = evaluated;
    if scheme != Scheme::Tas {
        for k in 0..surface.len().saturating_sub(1) {
            let (a, b) = (surface[k], surface[k + 1]);
            if a.p1 == b.p1 {
                surface[k].dpe_dp2 = Some((b.p_e - a.p_e) / (b.p2 - a.p2));
            }
        }
    }
    Ok(surface)
}

/// Grid argmax of the error, ties resolved toward smaller `p1`, then
/// smaller `p2`.
pub fn argmax(points: &[SurfacePoint]) -> Option<AttackOptimum> {
    let best = points.iter().map(|p| p.p_e).fold(f64::NEG_INFINITY, f64::max);
    if !best.is_finite() {
        return None;
    }
    let floor = best - TIE_TOLERANCE * best.abs();
    points
        .iter()
        .filter(|p| p.p_e >= floor)
        .min_by(|a, b| a.p1.total_cmp(&b.p1).then(a.p2.total_cmp(&b.p2)))
        .map(|p| AttackOptimum { p1: p.p1, p2: p.p2, p_e: p.p_e })
}

/// The attack maximizing the fusion error of `scheme`.
pub fn optimize_attack(
    scheme: Scheme,
    det: &DetectionParams,
    alpha0: f64,
    n_sensors: usize,
    grid_step: f64,
) -> Result<AttackOptimum, AnalysisError> {
    let surface = best_response_surface(scheme, det, alpha0, n_sensors, grid_step)?;
    argmax(&surface).ok_or_else(|| AnalysisError::InvalidArgument("empty attack grid".into()))
}

pub fn write_surface_csv<W: Write>(out: W, header_comment: &str, surface: &[SurfacePoint]) -> csv::Result<()> {
    let mut out = out;
    writeln!(out, "{header_comment}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p1", "p2", "p_e", "gamma_f", "gamma_m", "dpe_dp2"])?;
    for p in surface {
        w.write_record([
            p.p1.to_string(),
            p.p2.to_string(),
            format!("{:e}", p.p_e),
            p.gamma_f.to_string(),
            p.gamma_m.to_string(),
            p.dpe_dp2.map(|d| format!("{d:e}")).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
