//! Weight systems `(a_1 >= ... >= a_s; d)` and the numerical invariants
//! that depend only on the weights and the degree.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A hypersurface `X_d` in `P(a_1, ..., a_s)`, weights held in non-increasing
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightSystem {
    weights: Vec<u64>,
    degree: u64,
}

impl WeightSystem {
    /// Builds a weight system, sorting the weights into non-increasing order.
    pub fn new(mut weights: Vec<u64>, degree: u64) -> Result<Self, Error> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least two weights, got {}",
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidWeights("degree must be positive".into()));
        }
        weights.sort_unstable_by(|a, b| b.cmp(a));
        Ok(WeightSystem { weights, degree })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Number of ambient variables `s`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Dimension `s - 2` of the hypersurface.
    pub fn dim(&self) -> i64 {
        self.weights.len() as i64 - 2
    }

    /// `d - sum(a_i)`, so that `omega_X = O_X(k)`.
    pub fn canonical_degree(&self) -> i64 {
        self.degree as i64 - self.weights.iter().sum::<u64>() as i64
    }

    /// True when the degree equals one of the weights (a linear cone).
    pub fn is_degenerate(&self) -> bool {
        self.weights.contains(&self.degree)
    }

    /// Machine line `d a_1 ... a_s`.
    pub fn machine_line(&self) -> String {
        let mut out = self.degree.to_string();
        for a in &self.weights {
            out.push(' ');
            out.push_str(&a.to_string());
        }
        out
    }

    /// Parses a machine line `d a_1 ... a_s`.
    pub fn parse_machine_line(line: &str) -> Result<Self, Error> {
        let nums: Result<Vec<u64>, _> = line.split_whitespace().map(str::parse::<u64>).collect();
        let nums = nums.map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        if nums.len() < 3 {
            return Err(Error::Parse {
                line: 0,
                message: format!("expected degree and at least two weights in {line:?}"),
            });
        }
        WeightSystem::new(nums[1..].to_vec(), nums[0])
    }

    /// The cone construction: the same equation with `n` extra weights equal to one.
    pub fn with_unit_weights(&self, n: usize) -> Self {
        let mut weights = self.weights.clone();
        weights.extend(std::iter::repeat_n(1, n));
        WeightSystem {
            weights,
            degree: self.degree,
        }
    }

    pub fn plurigenus(&self, m: i64) -> BigInt {
        let mut counter = MonomialCounter::new(&self.weights);
        plurigenus_with(&mut counter, self.degree, m)
    }

    pub fn invariants(&self, plurigenera_up_to: i64) -> Invariants {
        let mut counter = MonomialCounter::new(&self.weights);
        let plurigenera = (1..=plurigenera_up_to)
            .map(|m| plurigenus_with(&mut counter, self.degree, m))
            .collect();
        let mut smallest_weight = 1;
        while plurigenus_with(&mut counter, self.degree, smallest_weight).is_zero() {
            smallest_weight += 1;
        }
        Invariants {
            k: self.canonical_degree(),
            degree_a: self.degree_a(),
            degree_k: self.degree_invariant(),
            plurigenera,
            smallest_weight,
        }
    }

    /// `A^{s-2} = d / prod(a_i)`.
    pub fn degree_a(&self) -> BigRational {
        let prod: BigInt = self.weights.iter().map(|&a| BigInt::from(a)).product();
        BigRational::new(BigInt::from(self.degree), prod)
    }

    /// `K^{s-2} = k^{s-2} d / prod(a_i)`.
    pub fn degree_invariant(&self) -> BigRational {
        let k = BigInt::from(self.canonical_degree());
        let e = self.weights.len().saturating_sub(2);
        let kpow = num_traits::pow(k, e);
        self.degree_a() * BigRational::from_integer(kpow)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "X_{} ⊂ P({})", self.degree, ws.join(","))
    }
}

fn plurigenus_with(counter: &mut MonomialCounter, degree: u64, m: i64) -> BigInt {
    let a = BigInt::from(counter.count(m));
    let b = BigInt::from(counter.count(m - degree as i64));
    a - b
}

/// Invariants derived from a weight system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub k: i64,
    #[serde(with = "rational_string")]
    pub degree_a: BigRational,
    #[serde(with = "rational_string")]
    pub degree_k: BigRational,
    /// `P_1, ..., P_n`.
    #[serde(with = "bigint_vec_string")]
    pub plurigenera: Vec<BigInt>,
    /// Least `m >= 1` with `P_m != 0`.
    pub smallest_weight: i64,
}

impl Invariants {
    pub fn degree_k_sign_ok(&self, dim: i64) -> bool {
        let expected = if self.k == 0 {
            0
        } else if self.k > 0 || dim % 2 == 0 {
            1
        } else {
            -1
        };
        let got = if self.degree_k.is_zero() {
            0
        } else if self.degree_k.is_positive() {
            1
        } else {
            -1
        };
        expected == got
    }
}

/// Counts exponent vectors `n` with `sum n_i a_i = m`, memoised on
/// `(suffix index, residual degree)`.
pub struct MonomialCounter {
    weights: Vec<u64>,
    memo: HashMap<(usize, u64), BigUint>,
}

impl MonomialCounter {
    pub fn new(weights: &[u64]) -> Self {
        MonomialCounter {
            weights: weights.to_vec(),
            memo: HashMap::new(),
        }
    }

    pub fn count(&mut self, m: i64) -> BigUint {
        if m < 0 {
            return BigUint::zero();
        }
        self.count_from(0, m as u64)
    }

    fn count_from(&mut self, idx: usize, m: u64) -> BigUint {
        if idx == self.weights.len() {
            return if m == 0 { BigUint::one() } else { BigUint::zero() };
        }
        if idx + 1 == self.weights.len() {
            return if m.is_multiple_of(self.weights[idx]) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        if let Some(v) = self.memo.get(&(idx, m)) {
            return v.clone();
        }
        let a = self.weights[idx];
        let mut total = BigUint::zero();
        let mut rest = m;
        loop {
            total += self.count_from(idx + 1, rest);
            if rest < a {
                break;
            }
            rest -= a;
        }
        self.memo.insert((idx, m), total.clone());
        total
    }
}

pub fn count_monomials(weights: &[u64], m: i64) -> BigUint {
    MonomialCounter::new(weights).count(m)
}

pub fn canonical_degree(ws: &WeightSystem) -> i64 {
    ws.canonical_degree()
}

pub fn plurigenus(ws: &WeightSystem, m: i64) -> BigInt {
    ws.plurigenus(m)
}

pub fn degree_invariant(ws: &WeightSystem) -> BigRational {
    ws.degree_invariant()
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod bigint_vec_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}
