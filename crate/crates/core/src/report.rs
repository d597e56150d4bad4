//! Serializable records shared by the command-line tools.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::instance::{Assignment, Instance, Supply};
use crate::rat::Rat;

/// One algorithm run on one instance, with the oracle value when known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub instance_id: String,
    pub algorithm: String,
    pub profit: Rat,
    pub oracle: Option<Rat>,
    pub ratio: Option<Rat>,
    pub wall_ns: u128,
}

impl RatioReport {
    /// The ratio `oracle / profit` is filled in exactly when the oracle value
    /// is known and the profit is positive.
    pub fn new(
        instance_id: impl Into<String>,
        algorithm: impl Into<String>,
        profit: Rat,
        oracle: Option<Rat>,
        wall_ns: u128,
    ) -> RatioReport {
        let ratio = match &oracle {
            Some(o) if profit.is_positive() => Some(o / &profit),
            _ => None,
        };
        RatioReport {
            instance_id: instance_id.into(),
            algorithm: algorithm.into(),
            profit,
            oracle,
            ratio,
            wall_ns,
        }
    }
}

/// A used bin in solution output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinEntry {
    pub bin: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub copy: Option<usize>,
    pub items: Vec<usize>,
}

/// Used bins of `a`; copy numbers are included for infinite supply only.
pub fn bin_entries(inst: &Instance, a: &Assignment) -> Vec<BinEntry> {
    a.iter()
        .map(|(b, items)| BinEntry {
            bin: b.bin,
            copy: (inst.supply() == Supply::Infinite).then_some(b.copy),
            items: items.to_vec(),
        })
        .collect()
}

/// Serializes a unit-supply assignment as a list of `{bin, items}`.
pub fn serialize_assignment<S: Serializer>(a: &Assignment, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(a.num_bins()))?;
    for (b, items) in a.iter() {
        seq.serialize_element(&BinEntry {
            bin: b.bin,
            copy: None,
            items: items.to_vec(),
        })?;
    }
    seq.end()
}
