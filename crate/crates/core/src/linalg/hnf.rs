//! Row-style Hermite normal form and integer solving of linear systems.

use num_integer::Integer;

use super::Int;

fn is_zero_row(row: &[Int]) -> bool {
    row.iter().all(|&x| x == 0)
}

fn sub_multiple(target: &mut [Int], source: &[Int], q: Int) {
    if q == 0 {
        return;
    }
    for (t, &s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form: same row lattice, positive pivots, zeros
/// below each pivot, entries above each pivot reduced into `[0, pivot)`,
/// zero rows dropped.
pub fn hermite_normal_form(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = rows.iter().filter(|r| !is_zero_row(r)).cloned().collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            // Row with the smallest nonzero absolute value in this column.
            let best = (r..a.len())
                .filter(|&i| a[i][col] != 0)
                .min_by_key(|&i| a[i][col].abs());
            let Some(best) = best else { break };
            a.swap(r, best);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let p = pivot_row[col];
            let mut done = true;
            for row in tail.iter_mut() {
                if row[col] != 0 {
                    let q = Integer::div_floor(&row[col], &p);
                    sub_multiple(row, pivot_row, q);
                    if row[col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][col] == 0 {
            continue;
        }
        if a[r][col] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        let (head, tail) = a.split_at_mut(r);
        let pivot_row = &tail[0];
        let p = pivot_row[col];
        for row in head.iter_mut() {
            let q = Integer::div_floor(&row[col], &p);
            sub_multiple(row, pivot_row, q);
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| !is_zero_row(row));
    a
}

/// Column index of the first nonzero entry.
pub fn pivot_column(row: &[Int]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Integer solutions of `A x = rhs`, as a particular solution plus a basis
/// of the integer kernel lattice. `None` when there is no integer solution.
pub fn integer_solutions(a: &[Vec<Int>], rhs: &[Int], nvars: usize) -> Option<(Vec<Int>, Vec<Vec<Int>>)> {
    let nrows = a.len();
    // Rows of [A^T | I]; unimodular row operations keep the right block a
    // change of basis of Z^nvars.
    let mut b: Vec<Vec<Int>> = (0..nvars)
        .map(|j| {
            let mut row = Vec::with_capacity(nrows + nvars);
            row.extend(a.iter().map(|r| r[j]));
            row.extend((0..nvars).map(|t| Int::from(t == j)));
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..nrows {
        if r == b.len() {
            break;
        }
        loop {
            let best = (r..b.len())
                .filter(|&i| b[i][col] != 0)
                .min_by_key(|&i| b[i][col].abs());
            let Some(best) = best else { break };
            b.swap(r, best);
            let (head, tail) = b.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let p = pivot_row[col];
            let mut done = true;
            for row in tail.iter_mut() {
                if row[col] != 0 {
                    let q = Integer::div_floor(&row[col], &p);
                    sub_multiple(row, pivot_row, q);
                    if row[col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if b[r][col] != 0 {
            pivots.push(col);
            r += 1;
        }
    }
    // Solve sum_t y_t * b[t][..nrows] = rhs over the echelon rows.
    let mut residual: Vec<Int> = rhs.to_vec();
    let mut x0 = vec![0; nvars];
    for (t, &pc) in pivots.iter().enumerate() {
        for c in 0..pc {
            if residual[c] != 0 {
                return None;
            }
        }
        let p = b[t][pc];
        if residual[pc] % p != 0 {
            return None;
        }
        let y = residual[pc] / p;
        for c in 0..nrows {
            residual[c] -= y * b[t][c];
        }
        for j in 0..nvars {
            x0[j] += y * b[t][nrows + j];
        }
    }
    if residual.iter().any(|&x| x != 0) {
        return None;
    }
    let kernel: Vec<Vec<Int>> = b[r..].iter().map(|row| row[nrows..].to_vec()).collect();
    Some((x0, reduce_basis(kernel)))
}

/// Integer kernel basis of the rows (vectors `z` with `row . z = 0`).
pub fn integer_kernel(rows: &[Vec<Int>], nvars: usize) -> Vec<Vec<Int>> {
    let rhs = vec![0; rows.len()];
    integer_solutions(rows, &rhs, nvars)
        .map(|(_, k)| k)
        .unwrap_or_default()
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[Int]) -> Int {
    dot(a, a)
}

/// Pairwise size reduction of a lattice basis; keeps the lattice and shortens
/// the vectors, which keeps enumeration boxes tight.
fn reduce_basis(mut basis: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let n = basis.len();
    if n < 2 {
        return basis;
    }
    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < 100 {
        changed = false;
        rounds += 1;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let nj = norm2(&basis[j]);
                if nj == 0 {
                    continue;
                }
                let num = dot(&basis[i], &basis[j]);
                // Round num / nj to the nearest integer.
                let q = Integer::div_floor(&(2 * num + nj), &(2 * nj));
                if q != 0 {
                    let bj = basis[j].clone();
                    let before = norm2(&basis[i]);
                    let candidate: Vec<Int> = basis[i].iter().zip(&bj).map(|(x, y)| x - q * y).collect();
                    if norm2(&candidate) < before {
                        basis[i] = candidate;
                        changed = true;
                    }
                }
            }
        }
    }
    basis
}

pub fn gcd_slice(v: &[Int]) -> Int {
    v.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_slice(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}
