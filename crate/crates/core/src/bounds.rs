//! The `Σ⁺`/`Σ⁻` coefficient bounds and the exponent bounds they give for
//! tangent monomials `x_i^{m-1} x_j` at coordinate points.

use num_integer::Integer;

use crate::linalg::{Int, RowShape};

/// Least `N` with `N a_1 >= Σ a_ℓ p_ℓ` for every non-increasing positive `a`:
/// the largest prefix sum of `p`, clamped below at zero.
pub fn sigma_plus(p: &[Int]) -> Int {
    p.iter().rev().fold(0, |t, &x| (t + x).max(0))
}

/// Greatest `N` with `N a_1 <= Σ a_ℓ p_ℓ`: the smallest prefix sum, clamped
/// above at zero.
pub fn sigma_minus(p: &[Int]) -> Int {
    p.iter().rev().fold(0, |t, &x| (t + x).min(0))
}

/// Candidate `(m, j)` pairs for the tangent monomial at the first coordinate
/// point, `j` 1-based, ordered by `m` then `j`.
pub fn max_power_first(s: usize, k: i64) -> Vec<(u32, usize)> {
    let top = if k < 0 { s as i64 - 1 } else { s as i64 + k };
    let mut out = Vec::new();
    for m in 2..=top {
        if m == 2 && k < 0 && 2 - (s as i64) < k {
            out.push((2, 1));
            continue;
        }
        for j in 1..=s {
            out.push((m as u32, j));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxPower {
    /// `m_i` is at most this value.
    Bound(Int),
    /// The last row has no positive solutions at all.
    NoSolutions,
    /// The row does not involve the degree, so gives no bound on `m_i`.
    Unbounded,
}

/// Bound on `m_i` from the echelon last row `(0, ..., 0, p_i, ..., p_s, -c, b)`.
///
/// The `c < 0` bound is used whatever the signs of `p`, since the lower
/// estimate `a_i Σ⁻ p <= Σ a_ℓ p_ℓ` holds for arbitrary integers.
pub fn max_power_at(shape: &RowShape) -> MaxPower {
    let (c, b) = (shape.c, shape.b);
    match c.signum() {
        1 => {
            let sp = sigma_plus(&shape.p);
            let num = if b >= 0 { sp } else { sp - b };
            MaxPower::Bound(Integer::div_ceil(&num, &c))
        }
        -1 => {
            let sm = sigma_minus(&shape.p);
            let num = if b >= 0 { sm - b } else { sm };
            MaxPower::Bound(Integer::div_ceil(&num, &c))
        }
        _ => {
            if shape.p.iter().all(|&x| x >= 0) && shape.p.iter().sum::<Int>() > b {
                MaxPower::NoSolutions
            } else {
                MaxPower::Unbounded
            }
        }
    }
}
