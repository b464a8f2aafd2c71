//! Well-formedness and quasismoothness of the general member of a weight
//! system, decided by monomial existence on coordinate strata.

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::weights::WeightSystem;

fn gcd_of(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, |g, x| g.gcd(&x))
}

/// Every `s - 1` of the weights are coprime.
pub fn is_wellformed_ambient(weights: &[u64]) -> bool {
    (0..weights.len()).all(|skip| {
        gcd_of(weights.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &a)| a)) == 1
    })
}

/// Ambient well-formedness, plus: every `s - 2` weights with common factor
/// `q > 1` have `q | d`.
pub fn is_wellformed_hypersurface(ws: &WeightSystem) -> bool {
    let a = ws.weights();
    if !is_wellformed_ambient(a) {
        return false;
    }
    let s = a.len();
    for i in 0..s {
        for j in i + 1..s {
            let q = gcd_of(
                a.iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i && t != j)
                    .map(|(_, &x)| x),
            );
            if q > 1 && !ws.degree().is_multiple_of(q) {
                return false;
            }
        }
    }
    true
}

/// Bit mask of variable indices (0-based).
pub type Mask = u32;

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: Mask) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Memoised test for "some monomial in the variables of `mask` has degree `t`".
pub struct MonomialOracle {
    weights: Vec<u64>,
    memo: HashMap<(Mask, u64), bool>,
}

impl MonomialOracle {
    pub fn new(weights: &[u64]) -> Self {
        MonomialOracle {
            weights: weights.to_vec(),
            memo: HashMap::new(),
        }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn exists(&mut self, mask: Mask, t: i64) -> bool {
        if t < 0 {
            return false;
        }
        let t = t as u64;
        if t == 0 {
            return true;
        }
        if mask == 0 {
            return false;
        }
        let idx = indices_of(mask);
        let g = gcd_of(idx.iter().map(|&i| self.weights[i]));
        if !t.is_multiple_of(g) {
            return false;
        }
        match idx.len() {
            1 => return true,
            2 => return two_variable(self.weights[idx[0]] / g, self.weights[idx[1]] / g, t / g).is_some(),
            _ => {}
        }
        if let Some(&v) = self.memo.get(&(mask, t)) {
            return v;
        }
        // Peel off the heaviest variable.
        let top = *idx.iter().max_by_key(|&&i| self.weights[i]).unwrap();
        let a = self.weights[top];
        let sub = mask & !(1 << top);
        let mut found = false;
        let mut r = t as i64;
        while r >= 0 {
            if self.exists(sub, r) {
                found = true;
                break;
            }
            r -= a as i64;
        }
        self.memo.insert((mask, t), found);
        found
    }

    /// Exponents (indexed like the weights) of a monomial of degree `t` in
    /// the variables of `mask`.
    pub fn witness(&mut self, mask: Mask, t: i64) -> Option<Vec<u64>> {
        if !self.exists(mask, t) {
            return None;
        }
        let mut exps = vec![0u64; self.weights.len()];
        let mut rest = t;
        let idx = indices_of(mask);
        let mut remaining = mask;
        for &i in &idx {
            remaining &= !(1 << i);
            let a = self.weights[i] as i64;
            let mut n = 0;
            while !self.exists(remaining, rest - n * a) {
                n += 1;
            }
            exps[i] = n as u64;
            rest -= n * a;
        }
        debug_assert_eq!(rest, 0);
        Some(exps)
    }
}

/// Nonnegative `(x, y)` with `x a + y b = t`, for coprime `a`, `b`.
fn two_variable(a: u64, b: u64, t: u64) -> Option<(u64, u64)> {
    // x = t a^{-1} mod b, minimal nonnegative.
    let (a, b, t) = (a as i128, b as i128, t as i128);
    let inv = modinv(a.rem_euclid(b), b);
    let x = (t.rem_euclid(b) * inv).rem_euclid(b);
    if x * a <= t {
        Some((x as u64, ((t - x * a) / b) as u64))
    } else {
        None
    }
}

fn modinv(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let e = a.extended_gcd(&m);
    e.x.rem_euclid(m)
}

/// How a coordinate stratum is shown to be nonsingular on the cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TangentCertificate {
    /// A monomial of degree `d` in the stratum's variables alone.
    PurePower(Vec<u64>),
    /// Monomials `x_I^M x_e` with distinct external variables `e` (0-based).
    Witnesses(Vec<(Vec<u64>, usize)>),
}

/// Quasismoothness certificate at the stratum of `mask`; an empty witness
/// list means the general member is singular there.
pub fn tangent_certificate(oracle: &mut MonomialOracle, d: u64, mask: Mask) -> TangentCertificate {
    if let Some(m) = oracle.witness(mask, d as i64) {
        return TangentCertificate::PurePower(m);
    }
    let s = oracle.weights().len();
    let mut out = Vec::new();
    for e in 0..s {
        if mask & (1 << e) != 0 {
            continue;
        }
        let t = d as i64 - oracle.weights()[e] as i64;
        if let Some(m) = oracle.witness(mask, t) {
            out.push((m, e));
        }
    }
    TangentCertificate::Witnesses(out)
}

pub fn tangent_monomials(ws: &WeightSystem, indices: &[usize]) -> TangentCertificate {
    let mut oracle = MonomialOracle::new(ws.weights());
    tangent_certificate(&mut oracle, ws.degree(), mask_of(indices))
}

fn stratum_ok(oracle: &mut MonomialOracle, d: u64, mask: Mask) -> bool {
    if oracle.exists(mask, d as i64) {
        return true;
    }
    let need = mask.count_ones() as usize;
    let s = oracle.weights().len();
    let mut have = 0;
    for e in 0..s {
        if mask & (1 << e) == 0 && oracle.exists(mask, d as i64 - oracle.weights()[e] as i64) {
            have += 1;
            if have >= need {
                return true;
            }
        }
    }
    false
}

pub fn is_quasismooth_with(oracle: &mut MonomialOracle, d: u64) -> bool {
    let s = oracle.weights().len();
    (1..(1u32 << s)).all(|mask| stratum_ok(oracle, d, mask))
}

/// Quasismoothness of the general member of `|O(d)|`.
pub fn is_quasismooth_general(ws: &WeightSystem) -> bool {
    let mut oracle = MonomialOracle::new(ws.weights());
    is_quasismooth_with(&mut oracle, ws.degree())
}

/// Nondegenerate, quasismooth, and (when asked) well-formed.
pub fn is_good(ws: &WeightSystem, require_wellformed: bool) -> bool {
    !ws.is_degenerate()
        && (!require_wellformed || is_wellformed_hypersurface(ws))
        && is_quasismooth_general(ws)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: &[u64], d: u64) -> WeightSystem {
        WeightSystem::new(w.to_vec(), d).unwrap()
    }

    #[test]
    fn ambient_wellformedness() {
        assert!(is_wellformed_ambient(&[1, 1, 1]));
        assert!(!is_wellformed_ambient(&[6, 4, 3]));
        assert!(is_wellformed_ambient(&[28, 24, 21, 16, 13, 11]));
    }

    #[test]
    fn hypersurface_wellformedness() {
        assert!(is_wellformed_hypersurface(&ws(&[18, 12, 7, 1], 36)));
        assert!(!is_wellformed_hypersurface(&ws(&[260, 121, 52, 52, 36], 520)));
        assert!(!is_wellformed_hypersurface(&ws(&[3, 2, 2], 6)));
    }

    #[test]
    fn quasismooth_examples() {
        assert!(is_quasismooth_general(&ws(&[1; 6], 5)));
        assert!(!is_quasismooth_general(&ws(&[12, 8, 5], 24)));
        assert!(is_quasismooth_general(&ws(&[15, 10, 3, 2, 1, 1], 31)));
        assert!(is_quasismooth_general(&ws(&[28, 24, 21, 16, 13, 11], 112)));
    }

    #[test]
    fn certificates_for_the_degree_112_fourfold() {
        let x = ws(&[28, 24, 21, 16, 13, 11], 112);
        // y, z have weights 24, 21: the witnesses are y^4 u and z^4 x.
        match tangent_monomials(&x, &[1, 2]) {
            TangentCertificate::Witnesses(w) => {
                assert_eq!(w.len(), 2);
                assert!(w.contains(&(vec![0, 4, 0, 0, 0, 0], 3)));
                assert!(w.contains(&(vec![0, 0, 4, 0, 0, 0], 0)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            tangent_monomials(&x, &[0]),
            TangentCertificate::PurePower(vec![4, 0, 0, 0, 0, 0])
        );
        assert_eq!(
            tangent_monomials(&ws(&[12, 8, 5], 24), &[2]),
            TangentCertificate::Witnesses(vec![])
        );
    }

    #[test]
    fn two_variable_solver() {
        assert_eq!(two_variable(3, 5, 7), None);
        assert_eq!(two_variable(3, 5, 8), Some((1, 1)));
        assert_eq!(two_variable(1, 1, 0), Some((0, 0)));
    }
}
