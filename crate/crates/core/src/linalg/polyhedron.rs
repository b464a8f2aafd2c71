//! Lattice points of polyhedra `{ y in Z^f : G y >= h }` in the small
//! dimensions that arise from tangent monomial matrices.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::hnf::{integer_kernel, integer_solutions, primitive};
use super::Int;

type Q = Ratio<Int>;

#[derive(Clone, Debug)]
pub struct Polyhedron {
    pub g: Vec<Vec<Int>>,
    pub h: Vec<Int>,
    pub dim: usize,
}

impl Polyhedron {
    pub fn new(g: Vec<Vec<Int>>, h: Vec<Int>, dim: usize) -> Self {
        Polyhedron { g, h, dim }
    }

    pub fn contains(&self, y: &[Int]) -> bool {
        self.g
            .iter()
            .zip(&self.h)
            .all(|(row, &hh)| row.iter().zip(y).map(|(a, b)| a * b).sum::<Int>() >= hh)
    }

    pub fn with_constraint(&self, row: Vec<Int>, rhs: Int) -> Self {
        let mut p = self.clone();
        p.g.push(row);
        p.h.push(rhs);
        p
    }

    /// Extreme rays of the recession cone `{ G y >= 0 }`, primitive and
    /// deduplicated. Assumes the cone is pointed.
    pub fn recession_rays(&self) -> Vec<Vec<Int>> {
        let f = self.dim;
        let mut rays: Vec<Vec<Int>> = Vec::new();
        if f == 0 {
            return rays;
        }
        let rows: Vec<&Vec<Int>> = self.g.iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
        let push = |r: Vec<Int>, rays: &mut Vec<Vec<Int>>| {
            let r = primitive(&r);
            if !rays.contains(&r) {
                rays.push(r);
            }
        };
        if f == 1 {
            for cand in [vec![1], vec![-1]] {
                if rows.iter().all(|row| row[0] * cand[0] >= 0) {
                    push(cand, &mut rays);
                }
            }
            return rays;
        }
        for_each_combination(rows.len(), f - 1, |idx| {
            let sub: Vec<Vec<Int>> = idx.iter().map(|&i| rows[i].clone()).collect();
            let ker = integer_kernel(&sub, f);
            if ker.len() != 1 {
                return;
            }
            let r = &ker[0];
            let signs: Vec<Int> = rows.iter().map(|row| dot(row, r)).collect();
            if signs.iter().all(|&v| v >= 0) {
                push(r.clone(), &mut rays);
            } else if signs.iter().all(|&v| v <= 0) {
                push(r.iter().map(|x| -x).collect(), &mut rays);
            }
        });
        rays
    }

    /// Vertices of the polyhedron as exact rationals.
    pub fn vertices(&self) -> Vec<Vec<Q>> {
        let f = self.dim;
        let mut out: Vec<Vec<Q>> = Vec::new();
        let m = self.g.len();
        if f == 0 || m < f {
            return out;
        }
        for_each_combination(m, f, |idx| {
            let a: Vec<Vec<Int>> = idx.iter().map(|&i| self.g[i].clone()).collect();
            let b: Vec<Int> = idx.iter().map(|&i| self.h[i]).collect();
            if let Some(y) = solve_square(&a, &b) {
                let feasible = self.g.iter().zip(&self.h).all(|(row, &hh)| {
                    let v: Q = row.iter().zip(&y).map(|(&c, x)| *x * c).sum();
                    v >= Q::from_integer(hh)
                });
                if feasible && !out.contains(&y) {
                    out.push(y);
                }
            }
        });
        out
    }

    /// Visits every lattice point of a bounded polyhedron in lexicographic
    /// order of coordinates.
    pub fn for_each_point(&self, visit: &mut dyn FnMut(&[Int])) {
        let mut prefix = Vec::with_capacity(self.dim);
        enumerate_rec(&self.g, &self.h, self.dim, &mut prefix, visit);
    }

    pub fn points(&self) -> Vec<Vec<Int>> {
        let mut out = Vec::new();
        self.for_each_point(&mut |p| out.push(p.to_vec()));
        out
    }
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn enumerate_rec(
    g: &[Vec<Int>],
    h: &[Int],
    dim: usize,
    prefix: &mut Vec<Int>,
    visit: &mut dyn FnMut(&[Int]),
) {
    // Drop constraints that no longer involve any variable.
    let mut gg = Vec::with_capacity(g.len());
    let mut hh = Vec::with_capacity(h.len());
    for (row, &rhs) in g.iter().zip(h) {
        if row.iter().all(|&x| x == 0) {
            if rhs > 0 {
                return;
            }
        } else {
            gg.push(row.clone());
            hh.push(rhs);
        }
    }
    if dim == 0 {
        visit(prefix);
        return;
    }
    let (lo, hi) = if dim == 1 {
        let mut lo: Option<Int> = None;
        let mut hi: Option<Int> = None;
        for (row, &rhs) in gg.iter().zip(&hh) {
            let c = row[0];
            if c > 0 {
                let b = ceil_div(rhs, c);
                lo = Some(lo.map_or(b, |l| l.max(b)));
            } else if c < 0 {
                let b = floor_div(rhs, c);
                hi = Some(hi.map_or(b, |u| u.min(b)));
            }
        }
        match (lo, hi) {
            (Some(l), Some(u)) => (l, u),
            _ => panic!("enumeration requested on an unbounded polyhedron"),
        }
    } else {
        let poly = Polyhedron::new(gg.clone(), hh.clone(), dim);
        let verts = poly.vertices();
        if verts.is_empty() {
            return;
        }
        let lo = verts.iter().map(|v| v[0]).min().unwrap().ceil().to_integer();
        let hi = verts.iter().map(|v| v[0]).max().unwrap().floor().to_integer();
        (lo, hi)
    };
    if lo > hi {
        return;
    }
    let rest: Vec<Vec<Int>> = gg.iter().map(|row| row[1..].to_vec()).collect();
    for v in lo..=hi {
        let h2: Vec<Int> = gg.iter().zip(&hh).map(|(row, &rhs)| rhs - row[0] * v).collect();
        prefix.push(v);
        enumerate_rec(&rest, &h2, dim - 1, prefix, visit);
        prefix.pop();
    }
}

fn ceil_div(a: Int, b: Int) -> Int {
    let q = a / b;
    if (a % b != 0) && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

fn floor_div(a: Int, b: Int) -> Int {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Solves a square system exactly; `None` when singular.
fn solve_square(a: &[Vec<Int>], b: &[Int]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x)).collect();
            r.push(Q::from_integer(rhs));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col];
        for c in col..=n {
            m[col][c] /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col];
                for c in col..=n {
                    let sub = factor * m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

/// Calls `f` with every increasing index tuple of length `k` drawn from `0..n`.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    'outer: loop {
        f(&idx);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        return;
    }
}

fn det2(a: &[Int], b: &[Int]) -> Int {
    a[0] * b[1] - a[1] * b[0]
}

/// Hilbert basis of the semigroup of lattice points in the two-dimensional
/// cone spanned by `r1` and `r2` inside `Z^f`. Elements are returned in
/// `Z^f`, ordered from `r1` towards `r2`.
pub fn hilbert_basis_2d(r1: &[Int], r2: &[Int]) -> Vec<Vec<Int>> {
    let f = r1.len();
    // Saturated lattice of the plane spanned by r1, r2.
    let perp = integer_kernel(&[r1.to_vec(), r2.to_vec()], f);
    let plane = if perp.is_empty() {
        (0..f)
            .map(|i| (0..f).map(|j| Int::from(i == j)).collect())
            .collect()
    } else {
        integer_kernel(&perp, f)
    };
    assert_eq!(plane.len(), 2, "rays must span a plane");
    // Express r1, r2 in plane coordinates.
    let cols: Vec<Vec<Int>> = (0..f).map(|i| vec![plane[0][i], plane[1][i]]).collect();
    let coords = |r: &[Int]| -> Vec<Int> {
        integer_solutions(&cols, r, 2)
            .expect("ray lies in its own saturated plane")
            .0
    };
    let mut p1 = coords(r1);
    let mut p2 = coords(r2);
    let mut d = det2(&p1, &p2);
    let flipped = d < 0;
    if flipped {
        std::mem::swap(&mut p1, &mut p2);
        d = -d;
    }
    // Lattice points of the half-open fundamental parallelogram.
    let corners = [[0, 0], [p1[0], p1[1]], [p2[0], p2[1]], [p1[0] + p2[0], p1[1] + p2[1]]];
    let xmin = corners.iter().map(|c| c[0]).min().unwrap();
    let xmax = corners.iter().map(|c| c[0]).max().unwrap();
    let ymin = corners.iter().map(|c| c[1]).min().unwrap();
    let ymax = corners.iter().map(|c| c[1]).max().unwrap();
    let mut cands: Vec<Vec<Int>> = vec![p1.clone(), p2.clone()];
    for x in xmin..=xmax {
        for y in ymin..=ymax {
            let p = vec![x, y];
            let m1 = det2(&p, &p2);
            let m2 = det2(&p1, &p);
            if (0..d).contains(&m1) && (0..d).contains(&m2) && (m1, m2) != (0, 0) {
                cands.push(p);
            }
        }
    }
    let in_cone = |v: &[Int]| det2(v, &p2) >= 0 && det2(&p1, v) >= 0;
    let mut basis: Vec<Vec<Int>> = cands
        .iter()
        .filter(|x| {
            !cands.iter().any(|y| {
                y != *x && {
                    let diff = vec![x[0] - y[0], x[1] - y[1]];
                    diff != vec![0, 0] && in_cone(&diff)
                }
            })
        })
        .cloned()
        .collect();
    basis.sort_by(|a, b| {
        // Angle order from p1: compare det(p1, a) / det(a, p2) ascending.
        let ka = (det2(&p1, a), det2(a, &p2));
        let kb = (det2(&p1, b), det2(b, &p2));
        (ka.0 * kb.1).cmp(&(kb.0 * ka.1))
    });
    basis.dedup();
    if flipped {
        basis.reverse();
    }
    basis
        .into_iter()
        .map(|c| (0..f).map(|i| c[0] * plane[0][i] + c[1] * plane[1][i]).collect())
        .collect()
}

pub fn is_nonneg_q(v: &Q) -> bool {
    !v.is_negative()
}
