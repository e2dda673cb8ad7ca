//! Cluster layer: MMSD aggregation into tagged packets, the packet codec,
//! fusion at the fusion center, and bit accounting.

mod codec;
mod hex;
mod mmsd;
mod overhead;

pub use codec::{ClusterReport, PacketTag};
pub use hex::{hexdump, parse_hex};
pub use mmsd::{aggregate_network, fc_decode_and_fuse, fc_fuse, fc_tallies, mmsd_aggregate};
pub use overhead::{measure_overhead, OverheadLedger, RoundOverhead};
