use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::pmf::{conditional_pmf, exact_group_vote, llr_weight, threshold_offset, ConditionalPmf};
use super::posterior::{eas_posterior, intelligent_posterior, tas_posterior, SetId, SetPosterior};
use crate::error::AnalysisError;
use crate::model::{AttackParams, DetectionParams, EasSet};

/// Fusion rule used at the fusion center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// No audit bits: every direct decision weighted alike.
    Direct,
    /// Two sets from the sensor's own status indicator, legacy attacker.
    Tas,
    /// Same partition against an attacker with `p1 != p2`.
    TasIntelligent,
    /// Four sets from both status indicators of the group.
    Eas,
    /// Four sets, `SS_high` and mismatched `SS_low` pairs dropped, matched
    /// `SS_low` pairs sent as one group vote.
    Ras,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Direct, Scheme::Tas, Scheme::TasIntelligent, Scheme::Eas, Scheme::Ras];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Direct => "direct",
            Scheme::Tas => "tas",
            Scheme::TasIntelligent => "tas_intelligent",
            Scheme::Eas => "eas",
            Scheme::Ras => "ras",
        }
    }

    /// The sets this scheme fuses, in statistic order.
    pub fn sets(self) -> Vec<SetId> {
        use crate::model::TasSet;
        match self {
            Scheme::Direct => vec![SetId::All],
            Scheme::Tas | Scheme::TasIntelligent => vec![SetId::Tas(TasSet::Low), SetId::Tas(TasSet::High)],
            Scheme::Eas => EasSet::ALL.iter().map(|&s| SetId::Eas(s)).collect(),
            Scheme::Ras => vec![SetId::GroupVote, SetId::Eas(EasSet::LowHigh), SetId::Eas(EasSet::HighLow)],
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown scheme `{s}` (expected one of direct, tas, tas_intelligent, eas, ras)"))
    }
}

/// One population of votes in the fusion statistic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FusionTerm {
    pub set: SetId,
    /// Expected number of votes from this set.
    pub count: f64,
    pub pmf: ConditionalPmf,
    /// Log-likelihood weight of a 1 vote, from the clamped pmf.
    pub weight: f64,
    /// Per-vote threshold offset `log((1-π10)/(1-π11))`.
    pub offset: f64,
}

impl FusionTerm {
    fn new(set: SetId, count: f64, pmf: ConditionalPmf) -> Result<Self, AnalysisError> {
        let c = pmf.clamped();
        Ok(FusionTerm { set, count, pmf, weight: llr_weight(&c)?, offset: threshold_offset(&c)? })
    }
}

/// Gaussian characterization of one scheme at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemePerformance {
    pub scheme: Scheme,
    pub n_sensors: usize,
    pub prior0: f64,
    pub prior1: f64,
    pub terms: Vec<FusionTerm>,
    pub eta: f64,
    pub mu0: f64,
    pub mu1: f64,
    pub var0: f64,
    pub var1: f64,
    pub gamma_f: f64,
    pub gamma_m: f64,
    pub p_false_alarm: f64,
    pub p_miss: f64,
    pub p_e: f64,
    /// A variance was exactly zero and the error was taken as the
    /// deterministic limit.
    pub degenerate: bool,
}

/// Standard Gaussian tail.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

fn kl(p: f64, q: f64) -> f64 {
    let part = |a: f64, b: f64| if a == 0.0 { 0.0 } else { a * (a / b).ln() };
    part(p, q) + part(1.0 - p, 1.0 - q)
}

impl SchemePerformance {
    fn from_terms(
        scheme: Scheme,
        det: &DetectionParams,
        n_sensors: usize,
        terms: Vec<FusionTerm>,
    ) -> Self {
        let eta = det.log_prior_ratio() + terms.iter().map(|t| t.count * t.offset).sum::<f64>();
        let moment = |f: &dyn Fn(&FusionTerm) -> f64| terms.iter().map(|t| t.count * f(t)).sum::<f64>();
        let mu0 = moment(&|t| t.pmf.clamped().pi10 * t.weight);
        let mu1 = moment(&|t| t.pmf.clamped().pi11 * t.weight);
        let var0 = moment(&|t| {
            let p = t.pmf.clamped().pi10;
            p * (1.0 - p) * t.weight * t.weight
        });
        let var1 = moment(&|t| {
            let p = t.pmf.clamped().pi11;
            p * (1.0 - p) * t.weight * t.weight
        });
        // ties go to H1
        let gamma_f = if var0 > 0.0 {
            (eta - mu0) / var0.sqrt()
        } else if mu0 < eta {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
        let gamma_m = if var1 > 0.0 {
            (mu1 - eta) / var1.sqrt()
        } else if mu1 >= eta {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
        let (p_false_alarm, p_miss) = (q_function(gamma_f), q_function(gamma_m));
        SchemePerformance {
            scheme,
            n_sensors,
            prior0: det.prior0,
            prior1: det.prior1,
            terms,
            eta,
            mu0,
            mu1,
            var0,
            var1,
            gamma_f,
            gamma_m,
            p_false_alarm,
            p_miss,
            p_e: det.prior0 * p_false_alarm + det.prior1 * p_miss,
            degenerate: var0 == 0.0 || var1 == 0.0,
        }
    }

    pub fn term(&self, set: SetId) -> Option<&FusionTerm> {
        self.terms.iter().find(|t| t.set == set)
    }

    /// Threshold rebuilt from arbitrary set cardinalities.
    pub fn threshold_with(&self, count: impl Fn(SetId) -> f64) -> f64 {
        (self.prior0 / self.prior1).ln() + self.terms.iter().map(|t| count(t.set) * t.offset).sum::<f64>()
    }

    /// `(γ_f, γ_m)` via the divergence decomposition
    /// `(±log(π0/π1) + Σ n D_q) / sqrt(Σ n g_q)`, an independent route to the
    /// same numbers. `None` when a variance vanishes.
    pub fn gamma_decomposition(&self) -> Option<(f64, f64)> {
        let lp = (self.prior0 / self.prior1).ln();
        let (mut d0, mut d1, mut g0, mut g1) = (0.0, 0.0, 0.0, 0.0);
        for t in &self.terms {
            let ConditionalPmf { pi11, pi10 } = t.pmf.clamped();
            let w = (pi11 / pi10).ln() - ((1.0 - pi11) / (1.0 - pi10)).ln();
            d0 += t.count * kl(pi10, pi11);
            d1 += t.count * kl(pi11, pi10);
            g0 += t.count * pi10 * (1.0 - pi10) * w * w;
            g1 += t.count * pi11 * (1.0 - pi11) * w * w;
        }
        (g0 > 0.0 && g1 > 0.0).then(|| ((lp + d0) / g0.sqrt(), (-lp + d1) / g1.sqrt()))
    }
}

fn set_terms(
    det: &DetectionParams,
    post: &SetPosterior,
    n: f64,
    keep: impl Fn(SetId) -> bool,
) -> Result<Vec<FusionTerm>, AnalysisError> {
    post.entries
        .iter()
        .filter(|e| keep(e.set) && e.occupancy > 0.0)
        .map(|e| FusionTerm::new(e.set, n * e.occupancy, e.pmf(det)?))
        .collect()
}

/// Closed-form performance of `scheme` with `n_sensors` sensors.
pub fn scheme_performance(
    scheme: Scheme,
    det: &DetectionParams,
    atk: &AttackParams,
    n_sensors: usize,
) -> Result<SchemePerformance, AnalysisError> {
    if n_sensors < 2 || !n_sensors.is_multiple_of(2) {
        return Err(AnalysisError::InvalidArgument(format!("n_sensors must be even and at least 2, got {n_sensors}")));
    }
    let n = n_sensors as f64;
    let terms = match scheme {
        Scheme::Direct => vec![FusionTerm::new(SetId::All, n, conditional_pmf(det, atk.alpha0, atk.p1))?],
        Scheme::Tas => set_terms(det, &tas_posterior(atk)?, n, |_| true)?,
        Scheme::TasIntelligent => set_terms(det, &intelligent_posterior(atk), n, |_| true)?,
        Scheme::Eas => {
            let post = eas_posterior(atk);
            super::as_printed::log_eas_discrepancies(det, atk, &post);
            set_terms(det, &post, n, |_| true)?
        }
        Scheme::Ras => {
            let post = eas_posterior(atk);
            let mut terms = Vec::with_capacity(3);
            let p_ss = post.occupancy(SetId::Eas(EasSet::SsLow));
            if p_ss > 0.0 {
                if let Some((pmf, agree)) = exact_group_vote(det, atk) {
                    let groups = (n_sensors / 2) as f64;
                    terms.push(FusionTerm::new(SetId::GroupVote, groups * agree * p_ss, pmf)?);
                }
            }
            terms.extend(set_terms(det, &post, n, |s| {
                matches!(s, SetId::Eas(EasSet::LowHigh) | SetId::Eas(EasSet::HighLow))
            })?);
            terms
        }
    };
    let perf = SchemePerformance::from_terms(scheme, det, n_sensors, terms);
    if perf.degenerate {
        log::debug!("{scheme} at {atk:?}: zero variance, deterministic limit p_e = {}", perf.p_e);
    }
    Ok(perf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det() -> DetectionParams {
        DetectionParams::new(0.9, 0.1)
    }

    #[test]
    fn q_function_values() {
        assert_eq!(q_function(0.0), 0.5);
        let q = q_function(1.959963984540054);
        assert!((q - 0.025).abs() < 1e-12, "{q:e}");
        assert_eq!(q_function(f64::INFINITY), 0.0);
        assert_eq!(q_function(f64::NEG_INFINITY), 1.0);
    }

    #[test]
    fn no_attackers_all_schemes_agree() {
        let atk = AttackParams::new(0.0, 0.4, 0.4);
        let direct = scheme_performance(Scheme::Direct, &det(), &atk, 100).unwrap();
        for s in [Scheme::Tas, Scheme::TasIntelligent, Scheme::Eas] {
            let p = scheme_performance(s, &det(), &atk, 100).unwrap();
            assert!((p.p_e - direct.p_e).abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn direct_reference_value() {
        let p = scheme_performance(Scheme::Direct, &det(), &AttackParams::new(0.3, 0.7, 0.0), 100).unwrap();
        assert!((p.p_e - 8.117e-8).abs() < 1e-10, "{}", p.p_e);
    }

    #[test]
    fn blind_direct_scheme() {
        let p = scheme_performance(Scheme::Direct, &det(), &AttackParams::new(0.5, 1.0, 0.0), 100).unwrap();
        assert!(p.degenerate);
        assert_eq!(p.p_e, 0.5);
    }

    #[test]
    fn two_gamma_routes_agree() {
        for s in Scheme::ALL {
            let atk = if s == Scheme::Tas { AttackParams::legacy(0.3, 0.7) } else { AttackParams::new(0.3, 0.7, 0.2) };
            let p = scheme_performance(s, &det(), &atk, 100).unwrap();
            let (gf, gm) = p.gamma_decomposition().unwrap();
            assert!((gf - p.gamma_f).abs() < 1e-9 && (gm - p.gamma_m).abs() < 1e-9, "{s}");
        }
    }

    #[test]
    fn odd_network_rejected() {
        assert!(scheme_performance(Scheme::Direct, &det(), &AttackParams::new(0.3, 0.7, 0.0), 101).is_err());
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("xyz".parse::<Scheme>().is_err());
    }
}
