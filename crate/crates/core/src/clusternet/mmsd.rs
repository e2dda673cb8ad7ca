use super::codec::ClusterReport;
use crate::analytic::SchemePerformance;
use crate::error::DecodeError;
use crate::model::{EasSet, GroupTranscript, ThresholdMode};
use crate::simcore::{decide, FusionOutcome, SetTallies, Tally};

/// Sorts one cluster's groups into the three forwarded packets. Matched
/// `SS_low` pairs send their common bit once; `SS_high` pairs and
/// mismatched `SS_low` pairs send nothing.
pub fn mmsd_aggregate(cluster_id: u16, groups: &[GroupTranscript]) -> ClusterReport {
    let mut report = ClusterReport::new(cluster_id);
    for g in groups {
        let (set_i, _) = g.eas_sets();
        match set_i {
            EasSet::SsLow if g.matched() => report.group_votes.push(g.i.u),
            EasSet::SsLow | EasSet::SsHigh => {}
            EasSet::LowHigh => {
                report.low_high.push(g.i.u);
                report.high_low.push(g.j.u);
            }
            EasSet::HighLow => {
                report.high_low.push(g.i.u);
                report.low_high.push(g.j.u);
            }
        }
    }
    report
}

/// Reports for a network split into `n_clusters` contiguous blocks of
/// groups, cluster ids starting at 0.
pub fn aggregate_network(groups: &[GroupTranscript], n_clusters: usize) -> Vec<ClusterReport> {
    let per = groups.len() / n_clusters.max(1);
    groups
        .chunks(per.max(1))
        .enumerate()
        .map(|(c, chunk)| mmsd_aggregate(c as u16, chunk))
        .collect()
}

fn tally(bits: &[bool]) -> Tally {
    Tally { count: bits.len() as u32, ones: bits.iter().filter(|&&b| b).count() as u32 }
}

/// What the fusion center can reconstruct from the packets: the three
/// forwarded sets. Everything else stays zero.
pub fn fc_tallies(reports: &[ClusterReport]) -> SetTallies {
    let mut t = SetTallies::default();
    for r in reports {
        let [_, low_high, high_low, _] = &mut t.eas;
        for (slot, bits) in [(&mut t.group_votes, &r.group_votes), (low_high, &r.low_high), (high_low, &r.high_low)] {
            let add = tally(bits);
            slot.count += add.count;
            slot.ones += add.ones;
        }
    }
    t
}

/// Fuses already-decoded reports with the reduced-set rule.
pub fn fc_fuse(reports: &[ClusterReport], perf: &SchemePerformance, mode: ThresholdMode) -> FusionOutcome {
    decide(perf, &fc_tallies(reports), mode)
}

/// Decodes every frame and fuses. The first malformed frame aborts with
/// an error naming its cluster and packet.
pub fn fc_decode_and_fuse<F: AsRef<[u8]>>(
    frames: &[F],
    perf: &SchemePerformance,
    mode: ThresholdMode,
) -> Result<FusionOutcome, DecodeError> {
    let reports = frames.iter().map(|f| ClusterReport::decode(f.as_ref())).collect::<Result<Vec<_>, _>>()?;
    Ok(fc_fuse(&reports, perf, mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Identity, SensorTranscript};
    use crate::simcore::group_transcript;

    const H: Identity = Identity::Honest;
    const B: Identity = Identity::Byzantine;

    #[test]
    fn honest_cluster_sends_only_group_votes() {
        let groups: Vec<_> = [(true, true), (false, false), (true, false)]
            .iter()
            .map(|&(a, b)| GroupTranscript { i: SensorTranscript::honest(a, b), j: SensorTranscript::honest(b, a) })
            .collect();
        let r = mmsd_aggregate(9, &groups);
        assert_eq!(r.group_votes, vec![true, false]);
        assert!(r.low_high.is_empty() && r.high_low.is_empty());
    }

    #[test]
    fn ss_high_pair_is_silent() {
        // two Byzantines with inconsistent own bits and clean relays
        let g = group_transcript((B, B), (true, false), (true, false, false), (false, true, false));
        assert_eq!(g.eas_sets(), (EasSet::SsHigh, EasSet::SsHigh));
        let r = mmsd_aggregate(0, &[g]);
        assert_eq!(r.payload_bits(), 0);
    }

    #[test]
    fn split_pair_goes_to_both_singles_packets() {
        // j is Byzantine with inconsistent own bits: d_i = 0, d_j = 1
        let g = group_transcript((H, B), (true, true), (false, false, false), (false, true, false));
        assert_eq!(g.eas_sets(), (EasSet::HighLow, EasSet::LowHigh));
        let r = mmsd_aggregate(0, &[g]);
        assert_eq!(r.high_low, vec![true]);
        assert_eq!(r.low_high, vec![true]);
    }
}
