//! Histograms of classification records.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::jk::extract_double_cover;
use crate::pipeline::ClassificationRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grouping {
    /// `h^0(X, A)`: the genus when `k = 1`, `P_1` otherwise.
    H0,
    /// Least `b` with `h^0(X, bA) != 0`, optionally in buckets
    /// `width*i + 1 ..= width*(i+1)` keyed by `i`.
    SmallestWeight { bucket: Option<i64> },
    Verdict,
    DoubleCover,
}

impl std::str::FromStr for Grouping {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pg" | "p1" | "h0" => Ok(Grouping::H0),
            "b" | "smallest-weight" => Ok(Grouping::SmallestWeight { bucket: None }),
            "verdict" => Ok(Grouping::Verdict),
            "double-cover" => Ok(Grouping::DoubleCover),
            _ => {
                if let Some(w) = s.strip_prefix("b/") {
                    let width = w.parse::<i64>().map_err(|e| e.to_string())?;
                    if width <= 0 {
                        return Err("bucket width must be positive".into());
                    }
                    return Ok(Grouping::SmallestWeight { bucket: Some(width) });
                }
                Err(format!("unknown grouping {s:?}"))
            }
        }
    }
}

/// Group key of one record.
pub fn key(r: &ClassificationRecord, grouping: Grouping) -> String {
    match grouping {
        Grouping::H0 => r.invariants.plurigenera[0].to_i64().map_or_else(|| r.invariants.plurigenera[0].to_string(), |x| x.to_string()),
        Grouping::SmallestWeight { bucket: None } => r.invariants.smallest_weight.to_string(),
        Grouping::SmallestWeight { bucket: Some(w) } => ((r.invariants.smallest_weight - 1) / w).to_string(),
        Grouping::Verdict => r.verdict().code().to_string(),
        Grouping::DoubleCover => (extract_double_cover(&r.ws).is_some()).to_string(),
    }
}

/// Counts per key; numeric keys sort numerically.
pub fn stats<'a>(records: impl IntoIterator<Item = &'a ClassificationRecord>, grouping: Grouping) -> Vec<(String, usize)> {
    let mut numeric: BTreeMap<i128, usize> = BTreeMap::new();
    let mut other: BTreeMap<String, usize> = BTreeMap::new();
    for r in records {
        let k = key(r, grouping);
        match k.parse::<i128>() {
            Ok(n) => *numeric.entry(n).or_default() += 1,
            Err(_) => *other.entry(k).or_default() += 1,
        }
    }
    numeric
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .chain(other)
        .collect()
}

/// `key count` lines.
pub fn render(table: &[(String, usize)]) -> String {
    table.iter().map(|(k, v)| format!("{k} {v}\n")).collect()
}
