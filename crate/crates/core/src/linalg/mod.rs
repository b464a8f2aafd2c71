//! Tangent monomial matrices: rows `(n_1, ..., n_s, -m, e)` recording
//! `deg(x^n / F^m) = e`, their integral echelon form, and the integer
//! points `(a_1, ..., a_s, d)` they cut out.

pub mod hnf;
pub mod polyhedron;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use hnf::{hermite_normal_form, integer_solutions, pivot_column};
use polyhedron::{hilbert_basis_2d, Polyhedron};

pub type Int = i128;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangentMonomialMatrix {
    s: usize,
    rows: Vec<Vec<Int>>,
}

impl TangentMonomialMatrix {
    /// The starting matrix with the single row `(1, ..., 1, -1, -k)`.
    pub fn initial(s: usize, k: i64) -> Self {
        let mut row = vec![1; s];
        row.push(-1);
        row.push(-(k as Int));
        TangentMonomialMatrix { s, rows: vec![row] }
    }

    pub fn from_rows(s: usize, rows: Vec<Vec<Int>>) -> Result<Self, Error> {
        if rows.iter().any(|r| r.len() != s + 2) {
            return Err(Error::InvalidWeights(format!("every row must have length {}", s + 2)));
        }
        Ok(TangentMonomialMatrix { s, rows })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    /// Appends the row of a monomial `x^n` that has the same degree as `F`.
    pub fn with_monomial(&self, exponents: &[Int]) -> Self {
        let mut row = exponents.to_vec();
        row.push(-1);
        row.push(0);
        let mut rows = self.rows.clone();
        rows.push(row);
        TangentMonomialMatrix { s: self.s, rows }
    }

    /// Row-style Hermite normal form with above-pivot entries in `[0, pivot)`.
    pub fn echelon_reduce(&self) -> Self {
        TangentMonomialMatrix {
            s: self.s,
            rows: hermite_normal_form(&self.rows),
        }
    }

    pub fn rank(&self) -> usize {
        hermite_normal_form(&self.rows).len()
    }

    /// Decomposes the last row as `(0, ..., 0, p_i, ..., p_s, -c, b)`.
    pub fn last_row_shape(&self) -> Result<RowShape, Error> {
        let row = self
            .rows
            .last()
            .ok_or_else(|| Error::DegenerateRow("empty matrix".into()))?;
        let s = self.s;
        match pivot_column(&row[..s]) {
            Some(col) if row[col] > 0 => Ok(RowShape {
                index: col + 1,
                p: row[col..s].to_vec(),
                c: -row[s],
                b: row[s + 1],
            }),
            _ => Err(Error::DegenerateRow(format!(
                "last row {row:?} has no positive leading weight entry"
            ))),
        }
    }

    /// All integer `(a_1, ..., a_s, d)` satisfying the rows with
    /// `a_1 >= ... >= a_s >= 1` and `d >= 1`.
    pub fn solve_weight_system(&self) -> Result<SolutionSet, Error> {
        solve_rows(self.s, &self.rows)
    }
}

/// The decomposed last row of an echelon matrix; `index` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowShape {
    pub index: usize,
    pub p: Vec<Int>,
    pub c: Int,
    pub b: Int,
}

/// A family `base + (semigroup generated by generators)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Family {
    pub base: Vec<Int>,
    /// Extreme rays of the recession cone.
    pub rays: Vec<Vec<Int>>,
    /// Hilbert basis of the recession cone's lattice points.
    pub generators: Vec<Vec<Int>>,
}

impl Family {
    pub fn dimension(&self) -> usize {
        self.rays.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolutionSet {
    pub sporadic: Vec<Vec<Int>>,
    pub families: Vec<Family>,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.sporadic.is_empty() && self.families.is_empty()
    }
}

/// Inequalities `a_i - a_{i+1} >= 0`, `a_s >= 1`, `d >= 1` as `(row, rhs)`.
fn ordering_constraints(s: usize) -> Vec<(Vec<Int>, Int)> {
    let n = s + 1;
    let mut out = Vec::with_capacity(s + 1);
    for i in 0..s - 1 {
        let mut row = vec![0; n];
        row[i] = 1;
        row[i + 1] = -1;
        out.push((row, 0));
    }
    let mut row = vec![0; n];
    row[s - 1] = 1;
    out.push((row, 1));
    let mut row = vec![0; n];
    row[s] = 1;
    out.push((row, 1));
    out
}

fn solve_rows(s: usize, rows: &[Vec<Int>]) -> Result<SolutionSet, Error> {
    let n = s + 1;
    let a: Vec<Vec<Int>> = rows.iter().map(|r| r[..n].to_vec()).collect();
    let rhs: Vec<Int> = rows.iter().map(|r| r[n]).collect();
    let Some((x0, kernel)) = integer_solutions(&a, &rhs, n) else {
        return Ok(SolutionSet::default());
    };
    let f = kernel.len();
    let to_x = |y: &[Int]| -> Vec<Int> {
        let mut x = x0.clone();
        for (coef, v) in y.iter().zip(&kernel) {
            for j in 0..n {
                x[j] += coef * v[j];
            }
        }
        x
    };
    let dir_x = |y: &[Int]| -> Vec<Int> {
        let mut x = vec![0; n];
        for (coef, v) in y.iter().zip(&kernel) {
            for j in 0..n {
                x[j] += coef * v[j];
            }
        }
        x
    };
    let mut g = Vec::new();
    let mut h = Vec::new();
    for (row, c) in ordering_constraints(s) {
        let gy: Vec<Int> = kernel.iter().map(|v| row.iter().zip(v).map(|(p, q)| p * q).sum()).collect();
        let base: Int = row.iter().zip(&x0).map(|(p, q)| p * q).sum();
        g.push(gy);
        h.push(c - base);
    }
    let poly = Polyhedron::new(g, h, f);
    let mut out = SolutionSet::default();
    if f == 0 {
        if poly.contains(&[]) {
            out.sporadic.push(x0);
        }
        return Ok(out);
    }
    let rays = poly.recession_rays();
    match rays.len() {
        0 => {
            poly.for_each_point(&mut |y| out.sporadic.push(to_x(y)));
        }
        1 => {
            let ray = &rays[0];
            let bases = minimal_points(&poly, std::slice::from_ref(ray), std::slice::from_ref(ray));
            let gen = dir_x(ray);
            for b in bases {
                out.families.push(Family {
                    base: to_x(&b),
                    rays: vec![gen.clone()],
                    generators: vec![gen.clone()],
                });
            }
        }
        2 => {
            let hb = hilbert_basis_2d(&rays[0], &rays[1]);
            let bases = minimal_points(&poly, &rays, &hb);
            let rx: Vec<Vec<Int>> = rays.iter().map(|r| dir_x(r)).collect();
            let gx: Vec<Vec<Int>> = hb.iter().map(|r| dir_x(r)).collect();
            for b in bases {
                out.families.push(Family {
                    base: to_x(&b),
                    rays: rx.clone(),
                    generators: gx.clone(),
                });
            }
        }
        d => {
            return Err(Error::UnsupportedFamilyDimension {
                dim: d,
                branch: format!("{rows:?}"),
            })
        }
    }
    Ok(out)
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lattice points `y` of the polyhedron with `y - g` outside it for every
/// generator `g`. Each such point is the base of a family covering all
/// lattice points above it.
fn minimal_points(poly: &Polyhedron, rays: &[Vec<Int>], generators: &[Vec<Int>]) -> Vec<Vec<Int>> {
    // A minimal point leaves the polyhedron when stepped back along every
    // extreme ray, so for each ray some facet is crossed: enumerate the
    // bounded slabs next to those facets.
    let mut per_ray: Vec<Vec<(Vec<Int>, Int)>> = Vec::new();
    for r in rays {
        let mut slabs = Vec::new();
        for (row, &rhs) in poly.g.iter().zip(&poly.h) {
            let gr = dot(row, r);
            if gr > 0 {
                let neg: Vec<Int> = row.iter().map(|x| -x).collect();
                slabs.push((neg, -(rhs + gr - 1)));
            }
        }
        per_ray.push(slabs);
    }
    let mut found: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut choice = vec![0usize; per_ray.len()];
    loop {
        let mut p = poly.clone();
        for (i, &c) in choice.iter().enumerate() {
            let (row, rhs) = &per_ray[i][c];
            p = p.with_constraint(row.clone(), *rhs);
        }
        p.for_each_point(&mut |y| {
            let minimal = generators.iter().all(|gvec| {
                let back: Vec<Int> = y.iter().zip(gvec).map(|(a, b)| a - b).collect();
                !poly.contains(&back)
            });
            if minimal {
                found.insert(y.to_vec());
            }
        });
        // Next combination of slab choices.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return found.into_iter().collect();
            }
            choice[i] += 1;
            if choice[i] < per_ray[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
