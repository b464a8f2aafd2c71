//! Brute-force oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wph_core::bounds::{sigma_minus, sigma_plus};
use wph_core::linalg::{Int, SolutionSet, TangentMonomialMatrix};
use wph_core::search::SearchNode;
use wph_core::singularity::{reid_tai, QuotientSingularity, Verdict};
use wph_core::verify::is_quasismooth_general;
use wph_core::WeightSystem;

/// Checks `Σ⁺`/`Σ⁻` on one coefficient vector: the bounds hold for random
/// non-increasing positive `a`, and are attained up to one by `(M, .., M, 1, .., 1)`.
pub fn sigma_case(p: &[Int], rng: &mut StdRng) -> Result<(), String> {
    let sp = sigma_plus(p);
    let sm = sigma_minus(p);
    for _ in 0..8 {
        let mut a: Vec<Int> = (0..p.len()).map(|_| rng.gen_range(1..=50)).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        let dot: Int = a.iter().zip(p).map(|(x, y)| x * y).sum();
        if sp * a[0] < dot || sm * a[0] > dot {
            return Err(format!("bound fails for p={p:?} a={a:?}"));
        }
    }
    let tail_abs: Int = p.iter().map(|x| x.abs()).sum();
    let big = tail_abs + 1;
    let witness = |j: usize| -> Int {
        p.iter()
            .enumerate()
            .map(|(i, x)| if i < j { big * x } else { *x })
            .sum()
    };
    if sp > 0 && !(1..=p.len()).any(|j| (sp - 1) * big < witness(j)) {
        return Err(format!("Σ⁺ not minimal for {p:?}"));
    }
    if sm < 0 && !(1..=p.len()).any(|j| (sm + 1) * big > witness(j)) {
        return Err(format!("Σ⁻ not maximal for {p:?}"));
    }
    Ok(())
}

pub fn sigma_suite(cases: usize, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..cases {
        let len = rng.gen_range(1..=7);
        let p: Vec<Int> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
        sigma_case(&p, &mut rng)?;
    }
    Ok(())
}

/// Age criterion straight from the definition, with exact fractions.
pub fn age_oracle(r: u64, b: &[u64]) -> Verdict {
    let mut v = Verdict::Terminal;
    for e in 1..r {
        let age: num_rational::Ratio<u64> = b.iter().map(|&x| num_rational::Ratio::new((e * x) % r, r)).sum();
        if age < num_rational::Ratio::from_integer(1) {
            return Verdict::NotCanonical;
        }
        if age == num_rational::Ratio::from_integer(1) {
            v = Verdict::CanonicalNotTerminal;
        }
    }
    v
}

pub fn reid_tai_suite(cases: usize, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..cases {
        let r = rng.gen_range(2..=200u64);
        let m = rng.gen_range(1..=4);
        let b: Vec<u64> = (0..m).map(|_| rng.gen_range(0..r)).collect();
        let got = reid_tai(&QuotientSingularity::new(r, b.clone()));
        let want = age_oracle(r, &b);
        if got != want {
            return Err(format!("1/{r}{b:?}: {got:?} vs {want:?}"));
        }
    }
    Ok(())
}

const P: u64 = 32_003;

fn mulp(a: u64, b: u64) -> u64 {
    a * b % P
}

fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, b);
        }
        b = mulp(b, b);
        e >>= 1;
    }
    r
}

/// Exponent vectors of all monomials of weighted degree `d`.
pub fn monomials(w: &[u64], d: u64) -> Vec<Vec<u64>> {
    fn go(w: &[u64], d: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let i = cur.len();
        if i == w.len() {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=d / w[i] {
            cur.push(e);
            go(w, d - e * w[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w, d, &mut Vec::new(), &mut out);
    out
}

type Mono = Vec<u32>;
/// Terms in decreasing monomial order, nonzero coefficients.
type Poly = Vec<(Mono, u64)>;

/// Polynomials over `F_p` graded by the weights, ordered by weighted degree
/// and then reverse lexicographically.
struct Ring {
    w: Vec<u64>,
}

impl Ring {
    fn deg(&self, m: &Mono) -> u64 {
        m.iter().zip(&self.w).map(|(e, w)| u64::from(*e) * w).sum()
    }

    fn cmp(&self, a: &Mono, b: &Mono) -> std::cmp::Ordering {
        self.deg(a).cmp(&self.deg(b)).then_with(|| {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            std::cmp::Ordering::Equal
        })
    }

    fn poly(&self, terms: impl IntoIterator<Item = (Mono, u64)>) -> Poly {
        let mut acc: std::collections::HashMap<Mono, u64> = std::collections::HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_default();
            *e = (*e + c) % P;
        }
        let mut out: Poly = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort_by(|x, y| self.cmp(&y.0, &x.0));
        out
    }

    /// `f - c m g`, merging the sorted term lists.
    fn sub_scaled(&self, f: &Poly, c: u64, m: &Mono, g: &Poly) -> Poly {
        use std::cmp::Ordering::*;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let mut shifted = g.iter().map(|(e, x)| (e.iter().zip(m).map(|(a, b)| a + b).collect::<Mono>(), (P - mulp(c, *x)) % P)).peekable();
        loop {
            let ord = match (f.get(i), shifted.peek()) {
                (Some(a), Some(b)) => self.cmp(&a.0, &b.0),
                (Some(_), None) => Greater,
                (None, Some(_)) => Less,
                (None, None) => break,
            };
            match ord {
                Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Less => out.push(shifted.next().unwrap()),
                Equal => {
                    let (m, x) = shifted.next().unwrap();
                    let c = (f[i].1 + x) % P;
                    if c != 0 {
                        out.push((m, c));
                    }
                    i += 1;
                }
            }
        }
        out
    }

    /// Full reduction modulo the basis.
    fn reduce(&self, mut f: Poly, basis: &[Poly]) -> Poly {
        let mut done: Poly = Vec::new();
        'outer: while let Some((lm, lc)) = f.first().cloned() {
            for g in basis {
                if divides(&g[0].0, &lm) {
                    let m: Mono = lm.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
                    f = self.sub_scaled(&f, mulp(lc, inv(g[0].1)), &m, g);
                    continue 'outer;
                }
            }
            done.push(f.remove(0));
        }
        done
    }

    /// For a weighted homogeneous ideal: is its zero set only the origin?
    /// True exactly when the Gröbner basis has a pure power of every variable
    /// among its leading monomials.
    fn only_origin(&self, polys: Vec<Poly>) -> bool {
        let n = self.w.len();
        if n == 0 {
            return true;
        }
        let mut basis: Vec<Poly> = Vec::new();
        let mut pure = vec![false; n];
        let note = |g: &Poly, pure: &mut Vec<bool>| {
            let lm = &g[0].0;
            let nz: Vec<usize> = (0..n).filter(|&i| lm[i] > 0).collect();
            if nz.len() == 1 {
                pure[nz[0]] = true;
            }
        };
        for f in polys {
            let f = self.reduce(f, &basis);
            if !f.is_empty() {
                let f = monic(f);
                note(&f, &mut pure);
                basis.push(f);
            }
        }
        let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let lcm = |a: &Mono, b: &Mono| -> Mono { a.iter().zip(b).map(|(x, y)| *x.max(y)).collect() };
        while !pure.iter().all(|&x| x) {
            // Normal strategy: the pair with the least lcm degree.
            let Some(pos) = (0..pairs.len()).min_by_key(|&q| {
                let (i, j) = pairs[q];
                self.deg(&lcm(&basis[i][0].0, &basis[j][0].0))
            }) else {
                return false;
            };
            let (i, j) = pairs.swap_remove(pos);
            let (a, b) = (&basis[i][0].0, &basis[j][0].0);
            if a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0) {
                continue;
            }
            let l = lcm(a, b);
            let ma: Mono = l.iter().zip(a).map(|(x, y)| x - y).collect();
            let mb: Mono = l.iter().zip(b).map(|(x, y)| x - y).collect();
            let fa = self.sub_scaled(&Vec::new(), P - 1, &ma, &basis[i]);
            let sp = self.sub_scaled(&fa, 1, &mb, &basis[j]);
            let r = self.reduce(sp, &basis);
            if r.is_empty() {
                continue;
            }
            let r = monic(r);
            note(&r, &mut pure);
            let k = basis.len();
            basis.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
        true
    }
}

fn monic(f: Poly) -> Poly {
    let c = inv(f[0].1);
    f.into_iter().map(|(m, x)| (m, mulp(x, c))).collect()
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Does the member with coefficients `mons` have a singular point on the
/// affine cone away from the origin with some coordinate zero? Such a point
/// lies on a hyperplane `x_j = 0`, where `F` and all its partials restrict
/// to weighted homogeneous polynomials in the other variables. Points with
/// every coordinate nonzero avoid the base locus, so a general member is
/// nonsingular there in characteristic zero.
fn singular_off_torus(w: &[u64], mons: &[(Vec<u64>, u64)]) -> bool {
    let s = w.len();
    (0..s).any(|j| {
        let keep: Vec<usize> = (0..s).filter(|&i| i != j).collect();
        let ring = Ring {
            w: keep.iter().map(|&i| w[i]).collect(),
        };
        let restrict = |e: &[u64]| -> Mono { keep.iter().map(|&i| e[i] as u32).collect() };
        let mut system = vec![ring.poly(mons.iter().filter(|(e, _)| e[j] == 0).map(|(e, c)| (restrict(e), *c)))];
        for i in 0..s {
            let partial = mons.iter().filter(|(e, _)| e[i] > 0).filter_map(|(e, c)| {
                let mut e = e.clone();
                let c = mulp(*c, e[i] % P);
                e[i] -= 1;
                (e[j] == 0).then(|| (restrict(&e), c))
            });
            system.push(ring.poly(partial));
        }
        system.retain(|f| !f.is_empty());
        !ring.only_origin(system)
    })
}

/// Jacobian verdict of a random member over `F_p`, `p` far above the degree.
pub fn jacobian_oracle(ws: &WeightSystem, rng: &mut StdRng) -> bool {
    let base = monomials(ws.weights(), ws.degree());
    if base.is_empty() {
        return false;
    }
    let mons: Vec<(Vec<u64>, u64)> = base.into_iter().map(|e| (e, rng.gen_range(1..P))).collect();
    !singular_off_torus(ws.weights(), &mons)
}

/// Random `(weights, degree)` with `s` weights and `d <= 40`. About half of
/// the weights divide `d`, which makes quasismooth cases common.
pub fn random_system(rng: &mut StdRng, s: usize) -> WeightSystem {
    loop {
        let d: u64 = rng.gen_range(4..=40);
        let divisors: Vec<u64> = (1..d).filter(|x| d.is_multiple_of(*x) && *x <= 12).collect();
        let mut w: Vec<u64> = (0..s)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    divisors[rng.gen_range(0..divisors.len())]
                } else {
                    rng.gen_range(1..=12.min(d - 1))
                }
            })
            .collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        if let Ok(ws) = WeightSystem::new(w, d) {
            return ws;
        }
    }
}

/// Compares the exact verdict with the Jacobian oracle on `cases` random
/// systems; returns how many were quasismooth.
pub fn jacobian_suite(cases: usize, seed: u64) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut checked, mut qs) = (0, 0);
    while checked < cases {
        let s = 3 + checked % 3;
        let ws = random_system(&mut rng, s);
        if monomials(ws.weights(), ws.degree()).len() > 150 {
            // Keeps the Gröbner bases small.
            continue;
        }
        let want = jacobian_oracle(&ws, &mut rng);
        let got = is_quasismooth_general(&ws);
        if got != want {
            return Err(format!("{ws}: engine {got}, oracle {want}"));
        }
        checked += 1;
        qs += usize::from(got);
    }
    Ok(qs)
}

/// Weight systems `(a_1 >= ... >= a_s >= 1, d = Σ a + k)` with `a_1 <= bound`
/// satisfying every row.
pub fn brute_solutions(m: &TangentMonomialMatrix, k: i64, bound: Int) -> Vec<Vec<Int>> {
    let s = m.s();
    let mut out = Vec::new();
    let mut a = vec![0 as Int; s];
    fn go(i: usize, cap: Int, a: &mut Vec<Int>, m: &TangentMonomialMatrix, k: i64, out: &mut Vec<Vec<Int>>) {
        let s = a.len();
        if i == s {
            let d = a.iter().sum::<Int>() + k as Int;
            if d < 1 {
                return;
            }
            let mut x = a.clone();
            x.push(d);
            if m.rows().iter().all(|r| r[..=s].iter().zip(&x).map(|(p, q)| p * q).sum::<Int>() == r[s + 1]) {
                out.push(x);
            }
            return;
        }
        for v in 1..=cap {
            a[i] = v;
            go(i + 1, v, a, m, k, out);
        }
    }
    go(0, bound, &mut a, m, k, &mut out);
    out.sort();
    out
}

/// Points of a solution set with `a_1 <= bound`.
pub fn enumerate_solutions(sol: &SolutionSet, bound: Int) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = sol.sporadic.iter().filter(|p| p[0] <= bound).cloned().collect();
    for f in &sol.families {
        let mut stack = vec![f.base.clone()];
        let mut seen = std::collections::BTreeSet::new();
        while let Some(p) = stack.pop() {
            if p[0] > bound || !seen.insert(p.clone()) {
                continue;
            }
            for g in &f.generators {
                stack.push(p.iter().zip(g).map(|(x, y)| x + y).collect());
            }
        }
        out.extend(seen);
    }
    out.sort();
    out.dedup();
    out
}

/// Random root-to-leaf walk of the search tree.
pub fn random_leaf(s: usize, k: i64, rng: &mut StdRng) -> SearchNode {
    let mut node = SearchNode::root(s, k);
    while let Some(pairs) = node.candidate_pairs(k) {
        if pairs.is_empty() {
            break;
        }
        let p = pairs[rng.gen_range(0..pairs.len())];
        node = node.child(p);
    }
    node
}

pub fn solver_suite(cases: usize, seed: u64) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut nonempty = 0;
    for _ in 0..cases {
        let s = rng.gen_range(3..=4);
        let k = rng.gen_range(-3..=3);
        let node = random_leaf(s, k, &mut rng);
        if node.candidate_pairs(k).is_some() {
            continue;
        }
        let bound = if s == 3 { 60 } else { 30 };
        let sol = node.matrix.solve_weight_system().map_err(|e| e.to_string())?;
        let got = enumerate_solutions(&sol, bound);
        let want = brute_solutions(&node.matrix, k, bound);
        if got != want {
            return Err(format!("{}: solver {got:?} brute {want:?}", node.describe()));
        }
        nonempty += usize::from(!want.is_empty());
    }
    Ok(nonempty)
}
