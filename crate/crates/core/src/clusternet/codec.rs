//! Byte layout of a cluster report.
//!
//! ```text
//! cluster_id: u16 BE
//! 3 x packet, in tag order 00, 01, 10:
//!     tag:     u8, upper six bits zero, lower two bits r
//!     count:   u16 BE
//!     payload: ceil(count / 8) bytes, MSB first, zero padded
//! ```

use serde::Serialize;

use crate::error::{DecodeError, EncodeError};

/// Set tag `r` of a packet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PacketTag {
    /// `r = 00`: one vote per matched `SS_low` group.
    GroupVotes,
    /// `r = 01`: sensors in `S_low_high`.
    LowHigh,
    /// `r = 10`: sensors in `S_high_low`.
    HighLow,
}

impl PacketTag {
    pub const ORDER: [PacketTag; 3] = [PacketTag::GroupVotes, PacketTag::LowHigh, PacketTag::HighLow];

    pub fn bits(self) -> u8 {
        match self {
            PacketTag::GroupVotes => 0b00,
            PacketTag::LowHigh => 0b01,
            PacketTag::HighLow => 0b10,
        }
    }

    pub fn from_bits(r: u8) -> Option<Self> {
        PacketTag::ORDER.into_iter().find(|t| t.bits() == r)
    }
}

/// Decisions one MMSD forwards to the fusion center.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClusterReport {
    pub cluster_id: u16,
    pub group_votes: Vec<bool>,
    pub low_high: Vec<bool>,
    pub high_low: Vec<bool>,
}

impl ClusterReport {
    pub fn new(cluster_id: u16) -> Self {
        ClusterReport { cluster_id, ..Default::default() }
    }

    pub fn packet(&self, tag: PacketTag) -> &[bool] {
        match tag {
            PacketTag::GroupVotes => &self.group_votes,
            PacketTag::LowHigh => &self.low_high,
            PacketTag::HighLow => &self.high_low,
        }
    }

    fn packet_mut(&mut self, tag: PacketTag) -> &mut Vec<bool> {
        match tag {
            PacketTag::GroupVotes => &mut self.group_votes,
            PacketTag::LowHigh => &mut self.low_high,
            PacketTag::HighLow => &mut self.high_low,
        }
    }

    /// Decision bits carried, headers and padding excluded.
    pub fn payload_bits(&self) -> usize {
        self.group_votes.len() + self.low_high.len() + self.high_low.len()
    }

    pub fn encoded_len(&self) -> usize {
        2 + PacketTag::ORDER.iter().map(|&t| 3 + self.packet(t).len().div_ceil(8)).sum::<usize>()
    }

    pub fn encode(&self) -> Result<Vec<u8>, EncodeError> {
        let mut out = Vec::with_capacity(self.encoded_len());
        out.extend_from_slice(&self.cluster_id.to_be_bytes());
        for (k, tag) in PacketTag::ORDER.into_iter().enumerate() {
            let bits = self.packet(tag);
            let count = u16::try_from(bits.len()).map_err(|_| EncodeError::TooManyDecisions {
                cluster_id: self.cluster_id,
                packet: k,
                count: bits.len(),
            })?;
            out.push(tag.bits());
            out.extend_from_slice(&count.to_be_bytes());
            for chunk in bits.chunks(8) {
                let byte = chunk.iter().enumerate().fold(0u8, |b, (i, &x)| b | ((x as u8) << (7 - i)));
                out.push(byte);
            }
        }
        Ok(out)
    }

    pub fn decode(frame: &[u8]) -> Result<Self, DecodeError> {
        if frame.len() < 2 {
            return Err(DecodeError::TruncatedHeader(frame.len()));
        }
        let cluster_id = u16::from_be_bytes([frame[0], frame[1]]);
        let fail = |packet: usize, reason: String| DecodeError::Packet { cluster_id, packet, reason };
        let mut report = ClusterReport::new(cluster_id);
        let mut pos = 2;
        for (k, expected) in PacketTag::ORDER.into_iter().enumerate() {
            let header = frame.get(pos..pos + 3).ok_or_else(|| fail(k, "truncated packet header".into()))?;
            let tag_byte = header[0];
            if tag_byte & !0b11 != 0 {
                return Err(fail(k, format!("reserved bits set in tag byte {tag_byte:#04x}")));
            }
            let tag = PacketTag::from_bits(tag_byte).ok_or_else(|| fail(k, format!("invalid set tag r={tag_byte:02b}")))?;
            if tag != expected {
                return Err(fail(k, format!("packet out of order: expected r={:02b}, found r={:02b}", expected.bits(), tag.bits())));
            }
            let count = u16::from_be_bytes([header[1], header[2]]) as usize;
            pos += 3;
            let len = count.div_ceil(8);
            let payload = frame.get(pos..pos + len).ok_or_else(|| {
                fail(k, format!("payload length mismatch: count {count} needs {len} bytes, {} available", frame.len() - pos))
            })?;
            if !count.is_multiple_of(8) {
                let pad_mask = 0xffu8 >> (count % 8);
                if payload[len - 1] & pad_mask != 0 {
                    return Err(fail(k, "nonzero padding bits".into()));
                }
            }
            let bits = report.packet_mut(tag);
            bits.extend((0..count).map(|i| payload[i / 8] & (0x80 >> (i % 8)) != 0));
            pos += len;
        }
        if pos != frame.len() {
            return Err(DecodeError::TrailingBytes { cluster_id, extra: frame.len() - pos });
        }
        Ok(report)
    }
}
