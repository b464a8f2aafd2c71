//! Quotient singularities of a general well-formed quasismooth hypersurface,
//! read off from the orbifold strata of the ambient space.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::verify::{mask_of, MonomialOracle};
use crate::weights::WeightSystem;

/// A maximal index set `I` with stabiliser order `r = gcd(a_i : i ∈ I) > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDescriptor {
    /// 0-based indices into the weight vector.
    pub indices: Vec<usize>,
    pub r: u64,
}

impl StratumDescriptor {
    /// Type `1/r(a_j : j ∉ I)` transverse to the stratum in the ambient space.
    pub fn transverse_type(&self, weights: &[u64]) -> Vec<u64> {
        (0..weights.len())
            .filter(|j| !self.indices.contains(j))
            .map(|j| weights[j] % self.r)
            .collect()
    }
}

/// Maximal orbifold strata, ordered by dimension and then by first index.
pub fn orbifold_strata(weights: &[u64]) -> Vec<StratumDescriptor> {
    let s = weights.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << s) {
        let idx: Vec<usize> = (0..s).filter(|&i| mask & (1 << i) != 0).collect();
        let r = idx.iter().fold(0u64, |g, &i| g.gcd(&weights[i]));
        if r <= 1 {
            continue;
        }
        let closure: Vec<usize> = (0..s).filter(|&i| weights[i].is_multiple_of(r)).collect();
        if closure == idx {
            out.push(StratumDescriptor { indices: idx, r });
        }
    }
    out.sort_by(|a, b| (a.indices.len(), &a.indices).cmp(&(b.indices.len(), &b.indices)));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    NotCanonical,
    CanonicalNotTerminal,
    Terminal,
    Smooth,
}

impl Verdict {
    /// Two-letter code used in record files.
    pub fn code(self) -> &'static str {
        match self {
            Verdict::Smooth => "SM",
            Verdict::Terminal => "TE",
            Verdict::CanonicalNotTerminal => "CA",
            Verdict::NotCanonical => "NC",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Some(match code {
            "SM" => Verdict::Smooth,
            "TE" => Verdict::Terminal,
            "CA" => Verdict::CanonicalNotTerminal,
            "NC" => Verdict::NotCanonical,
            _ => return None,
        })
    }

    pub fn is_canonical(self) -> bool {
        self >= Verdict::CanonicalNotTerminal
    }

    pub fn is_terminal(self) -> bool {
        self >= Verdict::Terminal
    }
}

/// `1/r(b_1, ..., b_m)` along a locus of the given dimension on `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSingularity {
    pub r: u64,
    pub b: Vec<u64>,
    pub dim: usize,
    pub dissident: bool,
}

impl QuotientSingularity {
    pub fn new(r: u64, b: Vec<u64>) -> Self {
        let b = b.into_iter().map(|x| x % r).collect();
        QuotientSingularity {
            r,
            b,
            dim: 0,
            dissident: false,
        }
    }
}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(u64::to_string).collect();
        write!(f, "1/{}({}) dim={}", self.r, b.join(","), self.dim)?;
        if self.dissident {
            write!(f, " dissident")?;
        }
        Ok(())
    }
}

/// Ages `Σ frac(e b_i / r)` for `e = 1..r-1`, compared with 1 exactly via
/// the numerators `Σ (e b_i mod r)` against `r`.
pub fn reid_tai(q: &QuotientSingularity) -> Verdict {
    let r = q.r;
    let mut verdict = Verdict::Terminal;
    for e in 1..r {
        let num: u64 = q.b.iter().map(|&b| (e * b) % r).sum();
        if num < r {
            return Verdict::NotCanonical;
        }
        if num == r {
            verdict = Verdict::CanonicalNotTerminal;
        }
    }
    verdict
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub singularities: Vec<QuotientSingularity>,
    pub verdict: Verdict,
}

/// Number of monomials of degree `t` in two variables of weights `a`, `b`.
fn binary_monomials(a: u64, b: u64, t: u64) -> u64 {
    (0..=t / a).filter(|p| (t - p * a).is_multiple_of(b)).count() as u64
}

/// Singular loci of the general `X_d`, one entry per point for zero-dimensional
/// loci inside one-dimensional strata.
pub fn hypersurface_singularities(ws: &WeightSystem) -> Result<SingularityReport, Error> {
    let a = ws.weights();
    let d = ws.degree();
    let mut oracle = MonomialOracle::new(a);
    let strata = orbifold_strata(a);
    // (stratum position, singularity, transverse-intersection flag)
    let mut found: Vec<(usize, QuotientSingularity, bool)> = Vec::new();
    for (pos, st) in strata.iter().enumerate() {
        let mask = mask_of(&st.indices);
        let n = st.indices.len();
        let b = st.transverse_type(a);
        let contained = !oracle.exists(mask, d as i64);
        if contained {
            let tangent = (0..a.len())
                .find(|&j| mask & (1 << j) == 0 && oracle.exists(mask, d as i64 - a[j] as i64))
                .ok_or_else(|| Error::NoTangentVariable {
                    ws: ws.to_string(),
                    stratum: st.indices.clone(),
                })?;
            let b: Vec<u64> = (0..a.len())
                .filter(|j| !st.indices.contains(j) && *j != tangent)
                .map(|j| a[j] % st.r)
                .collect();
            let mut q = QuotientSingularity::new(st.r, b);
            q.dim = n - 1;
            found.push((pos, q, false));
            continue;
        }
        if n < 2 {
            continue;
        }
        let mut q = QuotientSingularity::new(st.r, b);
        q.dim = n - 2;
        if n == 2 {
            let (i, j) = (st.indices[0], st.indices[1]);
            let g = st.r;
            let count = binary_monomials(a[i] / g, a[j] / g, d / g).saturating_sub(1);
            for _ in 0..count {
                found.push((pos, q.clone(), true));
            }
        } else if meets_open_stratum(&mut oracle, a, d, st, &strata) {
            found.push((pos, q, true));
        }
    }
    // A point is dissident when it lies on the closure of a transverse
    // positive-dimensional locus from a larger stratum.
    let flags: Vec<bool> = found
        .iter()
        .map(|(pos, q, _)| {
            q.dim == 0
                && found.iter().any(|(p2, q2, transverse)| {
                    *transverse
                        && q2.dim > 0
                        && p2 != pos
                        && strata[*pos].indices.iter().all(|i| strata[*p2].indices.contains(i))
                })
        })
        .collect();
    let singularities: Vec<QuotientSingularity> = found
        .into_iter()
        .zip(flags)
        .map(|((_, mut q, _), flag)| {
            q.dissident = flag;
            q
        })
        .collect();
    let verdict = singularities
        .iter()
        .map(reid_tai)
        .min()
        .unwrap_or(Verdict::Smooth);
    Ok(SingularityReport {
        singularities,
        verdict,
    })
}

/// Monomials of degree `t` in the variables `idx`, counted up to `cap`.
fn count_capped(oracle: &mut MonomialOracle, idx: &[usize], t: i64, cap: usize) -> usize {
    if !oracle.exists(mask_of(idx), t) {
        return 0;
    }
    if idx.len() == 1 {
        return 1;
    }
    let a = oracle.weights()[idx[0]] as i64;
    let mut total = 0;
    let mut rest = t;
    while rest >= 0 && total < cap {
        total += count_capped(oracle, &idx[1..], rest, cap - total);
        rest -= a;
    }
    total
}

/// For a stratum of dimension at least two that `X` meets properly: whether
/// `X` meets the part of it with stabiliser exactly `r`.
fn meets_open_stratum(
    oracle: &mut MonomialOracle,
    a: &[u64],
    d: u64,
    st: &StratumDescriptor,
    strata: &[StratumDescriptor],
) -> bool {
    // Two or more monomials: the general member cuts a hypersurface through
    // the torus of the stratum.
    if count_capped(oracle, &st.indices, d as i64, 2) >= 2 {
        return true;
    }
    // A single monomial: X ∩ Π is a union of coordinate substrata.
    let mask = mask_of(&st.indices);
    let only = oracle.witness(mask, d as i64).expect("monomial exists on a proper stratum");
    st.indices.iter().any(|&i| {
        only[i] > 0 && {
            let rest: Vec<usize> = st.indices.iter().copied().filter(|&j| j != i).collect();
            let g = rest.iter().fold(0u64, |g, &j| g.gcd(&a[j]));
            g == st.r && !strata.iter().any(|t| t.r > st.r && rest.iter().all(|j| t.indices.contains(j)))
        }
    })
}

pub fn classify_variety(ws: &WeightSystem) -> Result<SingularityReport, Error> {
    hypersurface_singularities(ws)
}

/// `d <= a_{s-1} a_s`.
pub fn has_no_tiger(ws: &WeightSystem) -> bool {
    let a = ws.weights();
    let s = a.len();
    ws.degree() <= a[s - 2] * a[s - 1]
}

/// `d < (s-1)/(s-2) a_{s-1} a_s`, compared exactly.
pub fn ke_sufficient(ws: &WeightSystem) -> bool {
    let a = ws.weights();
    let s = a.len() as u128;
    if s < 3 {
        return false;
    }
    let prod = a[a.len() - 2] as u128 * a[a.len() - 1] as u128;
    ws.degree() as u128 * (s - 2) < (s - 1) * prod
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: &[u64], d: u64) -> WeightSystem {
        WeightSystem::new(w.to_vec(), d).unwrap()
    }

    #[test]
    fn strata_of_x112() {
        let w = [28, 24, 21, 16, 13, 11];
        let st = orbifold_strata(&w);
        let zero: Vec<u64> = st.iter().filter(|s| s.indices.len() == 1).map(|s| s.r).collect();
        assert_eq!(zero, vec![28, 24, 21, 16, 13, 11]);
        let one: Vec<(Vec<usize>, u64)> = st
            .iter()
            .filter(|s| s.indices.len() == 2)
            .map(|s| (s.indices.clone(), s.r))
            .collect();
        assert_eq!(one, vec![(vec![0, 2], 7), (vec![1, 2], 3), (vec![1, 3], 8)]);
        let two: Vec<(Vec<usize>, u64)> = st
            .iter()
            .filter(|s| s.indices.len() == 3)
            .map(|s| (s.indices.clone(), s.r))
            .collect();
        assert_eq!(two, vec![(vec![0, 1, 3], 4)]);
        assert!(orbifold_strata(&[1, 1, 1, 1, 1, 1]).is_empty());
    }

    #[test]
    fn transverse_type_in_given_order() {
        let w = [1, 3, 5, 8, 12];
        let st = orbifold_strata(&w);
        let s = st.iter().find(|s| s.indices == vec![3, 4]).unwrap();
        assert_eq!(s.r, 4);
        assert_eq!(s.transverse_type(&w), vec![1, 3, 1]);
    }

    #[test]
    fn reid_tai_examples() {
        assert_eq!(reid_tai(&QuotientSingularity::new(3, vec![1, 1, 1, 2])), Verdict::Terminal);
        assert_eq!(reid_tai(&QuotientSingularity::new(3, vec![1, 1])), Verdict::NotCanonical);
        assert_eq!(reid_tai(&QuotientSingularity::new(2, vec![1, 1])), Verdict::CanonicalNotTerminal);
    }

    #[test]
    fn simple_reports() {
        let r = classify_variety(&ws(&[3, 2, 1, 1, 1, 1], 10)).unwrap();
        let lines: Vec<String> = r.singularities.iter().map(|q| q.to_string()).collect();
        assert_eq!(lines, vec!["1/3(2,1,1,1) dim=0"]);
        assert_eq!(r.verdict, Verdict::Terminal);
        assert_eq!(classify_variety(&ws(&[5, 2, 1, 1, 1, 1], 10)).unwrap().verdict, Verdict::Smooth);
        let r = classify_variety(&ws(&[10, 3, 3, 2, 2, 1], 20)).unwrap();
        let lines: Vec<String> = r.singularities.iter().map(|q| q.to_string()).collect();
        assert!(lines.contains(&"1/2(1,1,1) dim=1".to_string()));
        assert!(lines.contains(&"1/3(1,2,1) dim=1".to_string()));
    }

    #[test]
    fn x112_singularity_list() {
        let r = classify_variety(&ws(&[28, 24, 21, 16, 13, 11], 112)).unwrap();
        let mut lines: Vec<String> = r.singularities.iter().map(|q| q.to_string()).collect();
        lines.sort();
        let mut want = vec![
            "1/24(4,21,13,11) dim=0 dissident",
            "1/21(3,16,13,11) dim=0",
            "1/13(2,11,3,11) dim=0",
            "1/11(6,10,5,2) dim=0",
            "1/7(3,2,6,4) dim=0",
            "1/3(1,1,2) dim=1",
            "1/8(4,5,5,3) dim=0 dissident",
            "1/8(4,5,5,3) dim=0 dissident",
            "1/4(1,1,3) dim=1",
        ];
        want.sort();
        assert_eq!(lines, want);
        assert_eq!(r.verdict, Verdict::Terminal);
    }

    /// Reid–Tai by exact rational arithmetic over every group element.
    fn reid_tai_brute(q: &QuotientSingularity) -> Verdict {
        use num_rational::Ratio;
        let mut min = None::<Ratio<u64>>;
        for e in 1..q.r {
            let age: Ratio<u64> = q.b.iter().map(|&b| Ratio::new((e * b) % q.r, q.r)).sum();
            min = Some(min.map_or(age, |m: Ratio<u64>| m.min(age)));
        }
        match min {
            None => Verdict::Smooth,
            Some(m) if m > Ratio::from_integer(1) => Verdict::Terminal,
            Some(m) if m >= Ratio::from_integer(1) => Verdict::CanonicalNotTerminal,
            Some(_) => Verdict::NotCanonical,
        }
    }

    #[test]
    fn reid_tai_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..2000 {
            let r = rng.gen_range(2..=200u64);
            let n = rng.gen_range(2..=4usize);
            let b: Vec<u64> = (0..n).map(|_| rng.gen_range(1..r)).collect();
            if b.iter().fold(r, |g, &x| g.gcd(&x)) != 1 {
                continue;
            }
            let q = QuotientSingularity::new(r, b);
            assert_eq!(reid_tai(&q), reid_tai_brute(&q), "{q}");
        }
    }

    #[test]
    fn tiger_and_ke() {
        let x = ws(&[28, 24, 21, 16, 13, 11], 112);
        assert!(has_no_tiger(&x));
        assert!(ke_sufficient(&x));
        assert!(ke_sufficient(&ws(&[20, 17, 14, 11, 9, 7], 77)));
        assert!(!has_no_tiger(&ws(&[1; 6], 5)));
        assert!(!ke_sufficient(&ws(&[1; 6], 5)));
    }
}
