//! Double covers among Calabi–Yau hypersurfaces and the anticanonical series
//! they predict one dimension up.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::hnf::gcd_slice;
use crate::linalg::Int;
use crate::series::{Pattern, SeriesSolution, Status};
use crate::verify::is_wellformed_ambient;
use crate::weights::WeightSystem;

/// `S_{2c} ⊂ P(c, b_1, ..., b_m)` with `c = Σ b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCoverDatum {
    pub cover: WeightSystem,
    /// Base weights `b_i`, non-increasing.
    pub base: Vec<u64>,
    /// `P(b_1, ..., b_m)` is well-formed.
    pub base_wellformed: bool,
}

impl DoubleCoverDatum {
    pub fn c(&self) -> u64 {
        self.cover.degree() / 2
    }
}

/// The general member contains `y^2` for a weight `y` of degree `d/2`.
pub fn extract_double_cover(ws: &WeightSystem) -> Option<DoubleCoverDatum> {
    let d = ws.degree();
    if !d.is_multiple_of(2) {
        return None;
    }
    let c = d / 2;
    let pos = ws.weights().iter().position(|&a| a == c)?;
    let base: Vec<u64> = ws
        .weights()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, &a)| a)
        .collect();
    let base_wellformed = base.len() >= 2 && is_wellformed_ambient(&base);
    Some(DoubleCoverDatum {
        cover: ws.clone(),
        base,
        base_wellformed,
    })
}

/// `X_{2kc} ⊂ P(kc - 1, kb_1, ..., kb_m, 2)` for odd `k`, written with `k = λ + 1`
/// so the good members are the even `λ`.
pub fn jk_series(base: &[u64]) -> SeriesSolution {
    let c: Int = base.iter().map(|&b| b as Int).sum();
    let mut u = vec![c - 1];
    let mut g = vec![c];
    for &b in base {
        u.push(b as Int);
        g.push(b as Int);
    }
    u.extend([2, 2 * c]);
    g.extend([0, 2 * c]);
    SeriesSolution {
        base: u,
        generators: vec![g],
        pattern: Pattern::Residues {
            modulus: 2,
            residues: vec![0],
        },
        status: Status::Proved,
    }
}

/// Member of [`jk_series`] for the odd multiplier `k` itself.
pub fn jk_member(base: &[u64], k: u64) -> Option<WeightSystem> {
    let c: u64 = base.iter().sum();
    let mut w = vec![k * c - 1];
    w.extend(base.iter().map(|&b| k * b));
    w.push(2);
    WeightSystem::new(w, 2 * k * c).ok()
}

/// Order-free key of a one-parameter series: sorted (base, direction) pairs
/// over the weights, then the degree pair, from the normalized base.
pub fn series_key(s: &SeriesSolution) -> Vec<(Int, Int)> {
    let g = &s.generators[0];
    let gg = gcd_slice(g).abs().max(1);
    let u = s.normalized_base();
    let n = u.len() - 1;
    let mut pairs: Vec<(Int, Int)> = (0..n).map(|i| (u[i], g[i] / gg)).collect();
    pairs.sort_unstable();
    pairs.push((u[n], g[n] / gg));
    pairs
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JkReport {
    /// Double covers in the Calabi–Yau list.
    pub covers: usize,
    /// Those whose base space is well-formed.
    pub wellformed_bases: usize,
    /// Engine series matched by a well-formed-base cover.
    pub matched: usize,
    /// Engine series with no cover, as text lines.
    pub unmatched_series: Vec<String>,
    /// Well-formed-base covers whose series the engine did not produce.
    pub unmatched_covers: Vec<String>,
}

impl JkReport {
    pub fn is_bijection(&self) -> bool {
        self.unmatched_series.is_empty() && self.unmatched_covers.is_empty()
    }

    /// Counts, then one unmatched item per line.
    pub fn text(&self) -> String {
        let mut out = format!(
            "covers {}\nwellformed_bases {}\nmatched {}\nunmatched_series {}\nunmatched_covers {}\n",
            self.covers,
            self.wellformed_bases,
            self.matched,
            self.unmatched_series.len(),
            self.unmatched_covers.len()
        );
        for s in &self.unmatched_series {
            out.push_str(&format!("series {s}\n"));
        }
        for c in &self.unmatched_covers {
            out.push_str(&format!("cover {c}\n"));
        }
        out
    }
}

/// Compares the one-parameter anticanonical series of one dimension with the
/// series predicted from the Calabi–Yau list one dimension lower.
pub fn verify_jk(series: &[SeriesSolution], calabi_yau: &[WeightSystem]) -> JkReport {
    let covers: Vec<DoubleCoverDatum> = calabi_yau.iter().filter_map(extract_double_cover).collect();
    let mut predicted: BTreeMap<Vec<(Int, Int)>, &DoubleCoverDatum> = BTreeMap::new();
    for cov in covers.iter().filter(|c| c.base_wellformed) {
        predicted.insert(series_key(&jk_series(&cov.base)), cov);
    }
    let mut report = JkReport {
        covers: covers.len(),
        wellformed_bases: covers.iter().filter(|c| c.base_wellformed).count(),
        ..JkReport::default()
    };
    let mut seen = std::collections::BTreeSet::new();
    for s in series.iter().filter(|s| s.dimension() == 1) {
        let key = series_key(s);
        if predicted.contains_key(&key) {
            if seen.insert(key) {
                report.matched += 1;
            }
        } else {
            report.unmatched_series.push(s.text_line());
        }
    }
    for (key, cov) in &predicted {
        if !seen.contains(key) {
            report.unmatched_covers.push(cov.cover.to_string());
        }
    }
    report
}
