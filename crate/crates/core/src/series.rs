//! Infinite families of solutions `u + λk`: symbolic bounds on `λ`, truncation
//! of bounded families to their good members, and residue patterns for the
//! families that survive.

use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{Family, Int};
use crate::linalg::polyhedron::for_each_combination;
use crate::search::point_to_weights;
use crate::verify::{is_good, MonomialOracle};
use crate::weights::WeightSystem;

type Q = Ratio<Int>;

/// Outcome of the hyperbola trick on `N(λ) = (a + λb) / (c + λd)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hyperbola {
    /// Largest `λ >= 0` with `N(λ)` integral, `None` if there is none.
    Max(Option<Int>),
    /// `N` does not depend on `λ` and is this integer.
    ConstantInteger(Int),
    /// `N` does not depend on `λ` and is never integral.
    ConstantNonInteger,
    /// The denominator is constant and `N` is integral for infinitely many `λ`.
    Unbounded,
}

/// The largest `λ >= 0` making `(a + λb) / (c + λd)` an integer.
pub fn hyperbola_max_lambda(a: Int, b: Int, c: Int, d: Int) -> Hyperbola {
    hyperbola(a, b, c, d, false)
}

/// As [`hyperbola_max_lambda`], additionally asking for `N >= 0`.
pub fn hyperbola_max_lambda_nonneg(a: Int, b: Int, c: Int, d: Int) -> Hyperbola {
    hyperbola(a, b, c, d, true)
}

fn constant(n: Int, m: Int, nonneg: bool) -> Hyperbola {
    if n % m == 0 && (!nonneg || n / m >= 0) {
        Hyperbola::ConstantInteger(n / m)
    } else {
        Hyperbola::ConstantNonInteger
    }
}

fn hyperbola(a: Int, b: Int, c: Int, d: Int, nonneg: bool) -> Hyperbola {
    assert!(c != 0 || d != 0, "hyperbola with zero denominator");
    let ok = |lam: Int| {
        let den = c + lam * d;
        let num = a + lam * b;
        den != 0 && num % den == 0 && (!nonneg || num / den >= 0)
    };
    if d == 0 {
        if b == 0 {
            return constant(a, c, nonneg);
        }
        if !nonneg || (b > 0) == (c > 0) {
            return Hyperbola::Unbounded;
        }
        // N decreases to -infinity: only finitely many λ keep it nonnegative.
        let top = (a / -b).max(-1);
        return Hyperbola::Max((0..=top).rev().find(|&l| ok(l)));
    }
    let delta = a * d - b * c;
    if delta == 0 {
        return constant(b, d, nonneg);
    }
    // (c + λd) divides d(a + λb) - b(c + λd) = Δ, so c + λd runs over the
    // divisors of Δ; this is exact where clamping N near b/d is a bound.
    let mut best: Option<Int> = None;
    for q in divisors(delta.abs()) {
        for den in [q, -q] {
            let num = den - c;
            if num % d == 0 {
                let lam = num / d;
                if lam >= 0 && ok(lam) && best.is_none_or(|b| lam > b) {
                    best = Some(lam);
                }
            }
        }
    }
    Hyperbola::Max(best)
}

fn divisors(n: Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut i: Int = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out
}

/// Result of one symbolic test on a one-parameter series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No good member has `λ` above this value (negative: none at all).
    Bounded(Int),
    Inconclusive,
    NotApplicable,
}

impl Verdict {
    fn bound(self) -> Option<Int> {
        match self {
            Verdict::Bounded(l) => Some(l),
            _ => None,
        }
    }
}

/// Residue classes of `λ` modulo 2 allowed by the parity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Pass,
    /// Only `λ ≡ r (mod 2)` can give well-formed members.
    Only(Int),
    Reject,
}

fn split(u: &[Int]) -> (usize, Int) {
    (u.len() - 1, u[u.len() - 1])
}

pub fn member(u: &[Int], g: &[Int], lambda: Int) -> Vec<Int> {
    u.iter().zip(g).map(|(x, y)| x + lambda * y).collect()
}

/// The member at `λ` as a sorted weight system, when all entries are positive.
pub fn member_weights(u: &[Int], g: &[Int], lambda: Int) -> Option<WeightSystem> {
    let p = member(u, g, lambda);
    if p.iter().any(|&x| x <= 0) {
        return None;
    }
    point_to_weights(&p).ok()
}

/// Quasismoothness at the last coordinate point `P_s`: some `x_s^N x_i` must
/// have the degree of `F`.
pub fn test_final_point(u: &[Int], g: &[Int]) -> Verdict {
    let (s, d) = split(u);
    let e = g[s];
    if g[s - 1] == 0 {
        return Verdict::NotApplicable;
    }
    let mut best: Int = -1;
    for i in 0..s {
        match hyperbola_max_lambda_nonneg(d - u[i], e - g[i], u[s - 1], g[s - 1]) {
            Hyperbola::Max(Some(l)) => best = best.max(l),
            Hyperbola::Max(None) | Hyperbola::ConstantNonInteger => {}
            Hyperbola::ConstantInteger(_) | Hyperbola::Unbounded => return Verdict::Inconclusive,
        }
    }
    Verdict::Bounded(best)
}

/// Quasismoothness along one-strata `<x_i1, x_i2>` with equal entries in `u`
/// and in `k`, when exactly one entry of `k` vanishes.
pub fn test_one_strata(u: &[Int], g: &[Int]) -> Verdict {
    let (s, d) = split(u);
    let e = g[s];
    let zeros: Vec<usize> = (0..s).filter(|&i| g[i] == 0).collect();
    if zeros.len() != 1 {
        return Verdict::NotApplicable;
    }
    let ell = zeros[0];
    let mut overall: Option<Int> = None;
    for i1 in 0..s {
        for i2 in i1 + 1..s {
            if i1 == ell || i2 == ell || u[i1] != u[i2] || g[i1] != g[i2] {
                continue;
            }
            let (w, k) = (u[i1], g[i1]);
            if e % k != 0 || d % w == 0 {
                continue;
            }
            // The stratum weight divides the degree only while w + λk <= |c0|.
            let c0 = d - (e / k) * w;
            let mut pair = (c0.abs() - w).div_euclid(k);
            let mut conclusive = true;
            for j in (0..s).filter(|&j| j != i1 && j != i2 && j != ell) {
                match hyperbola_max_lambda_nonneg(d - u[j], e - g[j], w, k) {
                    Hyperbola::Max(Some(l)) => pair = pair.max(l),
                    Hyperbola::Max(None) | Hyperbola::ConstantNonInteger => {}
                    _ => conclusive = false,
                }
            }
            if conclusive {
                overall = Some(overall.map_or(pair, |o| o.min(pair)));
            }
        }
    }
    overall.map_or(Verdict::Inconclusive, Verdict::Bounded)
}

/// `u` and `k` agree in `s - 1` (or `s - 2`) of the weight entries, forcing a
/// large non-well-formed stratum once `λ > 0`. Agreement up to a common
/// factor `α` on `s - 1` entries has the same effect.
pub fn almost_identical_test(u: &[Int], g: &[Int]) -> Verdict {
    let (s, d) = split(u);
    let shared = (0..s).filter(|&i| u[i] == g[i]).count();
    if shared + 1 >= s {
        return Verdict::Bounded(0);
    }
    let mut proportional = false;
    for_each_combination(s, s - 1, |idx| {
        proportional |= proportionality(u, g, idx).is_some();
    });
    if proportional {
        return Verdict::Bounded(0);
    }
    let v = d - g[s];
    if shared + 2 == s && v != 0 {
        // λ + 1 must divide v.
        return Verdict::Bounded(v.abs() - 1);
    }
    Verdict::Inconclusive
}

/// Well-formedness modulo 2: a member fails when `s - 1` weights are even, or
/// `s - 2` weights are even and the degree is odd.
pub fn parity_test(u: &[Int], g: &[Int]) -> Parity {
    let (s, _) = split(u);
    let fails = |r: Int| {
        let even = (0..s).filter(|&i| (u[i] + r * g[i]).rem_euclid(2) == 0).count();
        let odd_degree = (u[s] + r * g[s]).rem_euclid(2) == 1;
        even + 1 >= s || (even + 2 == s && odd_degree)
    };
    match (fails(0), fails(1)) {
        (true, true) => Parity::Reject,
        (true, false) => Parity::Only(1),
        (false, true) => Parity::Only(0),
        (false, false) => Parity::Pass,
    }
}

/// `u_I = α k_I` with `α > 0` on all of `I`.
fn proportionality(u: &[Int], g: &[Int], idx: &[usize]) -> Option<Q> {
    let first = idx[0];
    if idx.iter().any(|&i| g[i] <= 0) {
        return None;
    }
    let alpha = Q::new(u[first], g[first]);
    idx.iter()
        .all(|&i| Q::new(u[i], g[i]) == alpha)
        .then_some(alpha)
}

fn floor_q(x: Q) -> Int {
    x.floor().to_integer()
}

/// Codimension-two strata `P_I`, `I ⊂ {1..s-1}`, `|I| = s - 2`, proportional
/// with `d != αe`: for `λ > |d - αe| - α` the stratum lies in `X` with
/// nontrivial stabiliser.
pub fn wf_codim2_bound(u: &[Int], g: &[Int]) -> Verdict {
    let (s, d) = split(u);
    if s < 3 {
        return Verdict::NotApplicable;
    }
    let e = Q::from_integer(g[s]);
    let d = Q::from_integer(d);
    let mut best: Option<Int> = None;
    for_each_combination(s - 1, s - 2, |idx| {
        if let Some(alpha) = proportionality(u, g, idx) {
            let c = d - alpha * e;
            if c != Q::from_integer(0) {
                let l = floor_q(c.abs() - alpha).max(0);
                best = Some(best.map_or(l, |b| b.min(l)));
            }
        }
    });
    best.map_or(Verdict::NotApplicable, Verdict::Bounded)
}

fn representable(weights: &[Int], t: Int) -> bool {
    if t < 0 {
        return false;
    }
    let w: Vec<u64> = weights.iter().map(|&x| x as u64).collect();
    let mut oracle = MonomialOracle::new(&w);
    oracle.exists((1 << w.len()) - 1, t as i64)
}

/// Tangent forms `x_h x_I^p` along a proportional stratum `Γ_I`: either
/// certified for every `λ`, or only available for `λ <= |C_h| - α`.
pub fn proportional_strata_bound(u: &[Int], g: &[Int], idx: &[usize]) -> Verdict {
    let (s, d) = split(u);
    let Some(alpha) = proportionality(u, g, idx) else {
        return Verdict::NotApplicable;
    };
    let e = g[s];
    let g_i: Vec<Int> = idx.iter().map(|&i| g[i]).collect();
    let c0 = Q::from_integer(d) - alpha * Q::from_integer(e);
    let zero = Q::from_integer(0);
    // Γ_I lies in X for every λ above `contained`.
    let contained = if c0 == zero {
        if representable(&g_i, e) {
            return Verdict::Inconclusive;
        }
        -1
    } else {
        floor_q(c0.abs() - alpha)
    };
    let mut certified = 0;
    let mut bounds = Vec::new();
    for h in (0..s).filter(|h| !idx.contains(h)) {
        let ch = c0 - (Q::from_integer(u[h]) - alpha * Q::from_integer(g[h]));
        if ch == zero && representable(&g_i, e - g[h]) {
            certified += 1;
        } else {
            bounds.push(floor_q(ch.abs() - alpha));
        }
    }
    let need = idx.len();
    if certified >= need {
        return Verdict::Inconclusive;
    }
    bounds.sort_unstable_by(|a, b| b.cmp(a));
    let from_forms = bounds.get(need - certified - 1).copied().unwrap_or(-1);
    Verdict::Bounded(contained.max(from_forms).max(0))
}

/// Best bound of [`proportional_strata_bound`] over all `I ⊂ {1..s-1}`.
pub fn proportional_strata_test(u: &[Int], g: &[Int]) -> Verdict {
    let (s, _) = split(u);
    let mut best: Option<Int> = None;
    for r in 1..s {
        for_each_combination(s - 1, r, |idx| {
            if let Verdict::Bounded(l) = proportional_strata_bound(u, g, idx) {
                best = Some(best.map_or(l, |b| b.min(l)));
            }
        });
    }
    best.map_or(Verdict::Inconclusive, Verdict::Bounded)
}

/// Combined symbolic verdict on a one-parameter series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Battery {
    pub bound: Option<Int>,
    pub parity: Parity,
}

impl Battery {
    /// Well-formedness tests are skipped when `wellformed` is false.
    pub fn run(u: &[Int], g: &[Int], wellformed: bool) -> Self {
        let mut verdicts = vec![test_final_point(u, g), test_one_strata(u, g), proportional_strata_test(u, g)];
        let parity = if wellformed {
            verdicts.push(almost_identical_test(u, g));
            verdicts.push(wf_codim2_bound(u, g));
            parity_test(u, g)
        } else {
            Parity::Pass
        };
        let bound = verdicts.into_iter().filter_map(Verdict::bound).min();
        Battery { bound, parity }
    }

    fn allows(&self, lambda: Int) -> bool {
        match self.parity {
            Parity::Pass => true,
            Parity::Only(r) => lambda.rem_euclid(2) == r,
            Parity::Reject => false,
        }
    }
}

/// Which `λ` of a series give good members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    /// `λ ≡ r (mod m)` for the listed `r`.
    Residues { modulus: Int, residues: Vec<Int> },
    /// Finitely many members, all with `λ <= bound`.
    Truncated(Int),
    Empty,
    /// Good members seen in the scan without a period.
    Irregular(Vec<Int>),
    /// Two-parameter series: good lattice points out of those scanned.
    Partial { good: usize, scanned: usize },
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Residues { modulus, residues } => {
                let r: Vec<String> = residues.iter().map(Int::to_string).collect();
                write!(f, "residues {{{}}} mod {modulus}", r.join(","))
            }
            Pattern::Truncated(l) => write!(f, "trunc λ≤{l}"),
            Pattern::Empty => write!(f, "empty"),
            Pattern::Irregular(v) => {
                let r: Vec<String> = v.iter().map(Int::to_string).collect();
                write!(f, "irregular {{{}}}", r.join(","))
            }
            Pattern::Partial { good, scanned } => write!(f, "lattice {good}/{scanned}"),
        }
    }
}

/// Smallest period of the good flags, requiring two full periods in view.
pub fn detect_pattern(flags: &[bool]) -> Pattern {
    if !flags.contains(&true) {
        return Pattern::Empty;
    }
    let n = flags.len();
    for m in 1..=n / 2 {
        if (0..n - m).all(|i| flags[i] == flags[i + m]) {
            let residues = (0..m).filter(|&i| flags[i]).map(|i| i as Int).collect();
            return Pattern::Residues {
                modulus: m as Int,
                residues,
            };
        }
    }
    Pattern::Irregular((0..n).filter(|&i| flags[i]).map(|i| i as Int).collect())
}

/// Full verification of members `λ = 0..n-1`.
pub fn scan_flags(u: &[Int], g: &[Int], n: usize, wellformed: bool) -> Vec<bool> {
    (0..n as Int)
        .into_par_iter()
        .map(|l| member_weights(u, g, l).is_some_and(|ws| is_good(&ws, wellformed)))
        .collect()
}

pub fn scan_series(u: &[Int], g: &[Int], n: usize, wellformed: bool) -> Pattern {
    detect_pattern(&scan_flags(u, g, n, wellformed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Proved,
    Experimental,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "proved",
            Status::Experimental => "experimental",
        })
    }
}

/// A surviving infinite series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSolution {
    /// First point `u` of the series in weight order.
    pub base: Vec<Int>,
    pub generators: Vec<Vec<Int>>,
    pub pattern: Pattern,
    pub status: Status,
}

impl SeriesSolution {
    pub fn dimension(&self) -> usize {
        self.generators.len().min(2)
    }

    /// Base moved back along the generator to the last point with all
    /// entries positive; only meaningful for one-parameter series.
    pub fn normalized_base(&self) -> Vec<Int> {
        let g = &self.generators[0];
        let t = self
            .base
            .iter()
            .zip(g)
            .filter(|&(_, &k)| k > 0)
            .map(|(&x, &k)| (x - 1).div_euclid(k))
            .min()
            .unwrap_or(0);
        member(&self.base, g, -t)
    }

    /// Offset of the normalized base relative to `base`.
    pub fn normalized_offset(&self) -> Int {
        let g = &self.generators[0];
        self.base
            .iter()
            .zip(g)
            .filter(|&(_, &k)| k > 0)
            .map(|(&x, &k)| (x - 1).div_euclid(k))
            .min()
            .map_or(0, |t| -t)
    }

    /// Text form `u=[…] gen=[…;…] pattern=… status=…`.
    pub fn text_line(&self) -> String {
        let join = |v: &[Int]| v.iter().map(Int::to_string).collect::<Vec<_>>().join(",");
        let gens: Vec<String> = self.generators.iter().map(|g| join(g)).collect();
        format!(
            "u=[{}] gen=[{}] pattern={} status={}",
            join(&self.base),
            gens.join(";"),
            self.pattern,
            self.status
        )
    }

    /// Parses [`SeriesSolution::text_line`] output. Pattern and status are
    /// kept only in their simple forms.
    pub fn parse_text_line(line: &str) -> Option<Self> {
        let field = |key: &str| -> Option<&str> {
            let start = line.find(key)? + key.len();
            let rest = &line[start..];
            rest.split(" pattern=").next()?.split(" status=").next()?.split(" gen=").next()
        };
        let nums = |s: &str| -> Option<Vec<Int>> {
            s.split(',').map(|x| x.trim().parse().ok()).collect()
        };
        let u = field("u=[")?.trim_end_matches(']');
        let g = field("gen=[")?.trim_end_matches(']');
        let base = nums(u)?;
        let generators = g.split(';').map(nums).collect::<Option<Vec<_>>>()?;
        let pattern_text = field("pattern=")?;
        let pattern = parse_pattern(pattern_text)?;
        let status = match line.rsplit("status=").next()?.trim() {
            "proved" => Status::Proved,
            "experimental" => Status::Experimental,
            _ => return None,
        };
        Some(SeriesSolution {
            base,
            generators,
            pattern,
            status,
        })
    }
}

fn parse_pattern(text: &str) -> Option<Pattern> {
    let list = |s: &str| -> Option<Vec<Int>> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        if inner.is_empty() {
            return Some(Vec::new());
        }
        inner.split(',').map(|x| x.parse().ok()).collect()
    };
    let text = text.trim();
    if text == "empty" {
        return Some(Pattern::Empty);
    }
    if let Some(rest) = text.strip_prefix("trunc λ≤") {
        return rest.parse().ok().map(Pattern::Truncated);
    }
    if let Some(rest) = text.strip_prefix("residues ") {
        let (set, m) = rest.split_once(" mod ")?;
        return Some(Pattern::Residues {
            modulus: m.parse().ok()?,
            residues: list(set)?,
        });
    }
    if let Some(rest) = text.strip_prefix("irregular ") {
        return list(rest).map(Pattern::Irregular);
    }
    if let Some(rest) = text.strip_prefix("lattice ") {
        let (a, b) = rest.split_once('/')?;
        return Some(Pattern::Partial {
            good: a.parse().ok()?,
            scanned: b.parse().ok()?,
        });
    }
    None
}

#[derive(Clone, Copy, Debug)]
pub struct SeriesOptions {
    /// Members verified when a series survives the symbolic tests.
    pub scan: usize,
    pub wellformed: bool,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            scan: 100,
            wellformed: true,
        }
    }
}

/// What became of one raw family.
#[derive(Clone, Debug, Default)]
pub struct FamilyAnalysis {
    /// Good members of truncated families, for the sporadic list.
    pub sporadic: Vec<WeightSystem>,
    /// Families that survive as infinite series.
    pub series: Vec<SeriesSolution>,
    /// Two-parameter families whose good points all lie on the two boundary
    /// rays; the rays were analysed as one-parameter series instead.
    pub split_planes: Vec<SeriesSolution>,
    /// Families eliminated by a symbolic test.
    pub truncated: usize,
    pub rejected: usize,
}

impl FamilyAnalysis {
    pub fn merge(mut self, other: FamilyAnalysis) -> Self {
        self.sporadic.extend(other.sporadic);
        self.series.extend(other.series);
        self.split_planes.extend(other.split_planes);
        self.truncated += other.truncated;
        self.rejected += other.rejected;
        self
    }
}

pub fn analyze_line(u: &[Int], g: &[Int], opts: &SeriesOptions) -> FamilyAnalysis {
    let battery = Battery::run(u, g, opts.wellformed);
    let mut out = FamilyAnalysis::default();
    if battery.parity == Parity::Reject {
        out.rejected = 1;
        return out;
    }
    if let Some(bound) = battery.bound {
        out.truncated = 1;
        out.sporadic = (0..=bound)
            .into_par_iter()
            .filter(|&l| battery.allows(l))
            .filter_map(|l| member_weights(u, g, l))
            .filter(|ws| is_good(ws, opts.wellformed))
            .collect();
        return out;
    }
    let flags = scan_flags(u, g, opts.scan, opts.wellformed);
    out.series.push(SeriesSolution {
        base: u.to_vec(),
        generators: vec![g.to_vec()],
        pattern: detect_pattern(&flags),
        status: Status::Experimental,
    });
    out
}

/// Depth (sum of semigroup coefficients) scanned for two-parameter families.
pub const TWO_PARAM_DEPTH: usize = 12;

fn two_param(fam: &Family, opts: &SeriesOptions) -> FamilyAnalysis {
    let u = &fam.base;
    let gens = &fam.generators;
    let r1 = &fam.rays[0];
    let r2 = &fam.rays[1];
    let mut points = std::collections::BTreeSet::new();
    let n = gens.len();
    let mut coeffs = vec![0usize; n];
    loop {
        let mut p = u.clone();
        for (c, g) in coeffs.iter().zip(gens) {
            for (x, y) in p.iter_mut().zip(g) {
                *x += *c as Int * y;
            }
        }
        points.insert(p);
        // Next coefficient vector with sum <= depth.
        let mut i = 0;
        loop {
            if i == n {
                return classify_two_param(fam, points, r1, r2, opts);
            }
            coeffs[i] += 1;
            if coeffs.iter().sum::<usize>() <= TWO_PARAM_DEPTH {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

fn on_ray(diff: &[Int], r: &[Int]) -> bool {
    // diff = t r for some t >= 0.
    let Some(j) = r.iter().position(|&x| x != 0) else {
        return false;
    };
    if diff[j] % r[j] != 0 {
        return false;
    }
    let t = diff[j] / r[j];
    t >= 0 && diff.iter().zip(r).all(|(a, b)| *a == t * b)
}

fn classify_two_param(
    fam: &Family,
    points: std::collections::BTreeSet<Vec<Int>>,
    r1: &[Int],
    r2: &[Int],
    opts: &SeriesOptions,
) -> FamilyAnalysis {
    let u = &fam.base;
    let points: Vec<Vec<Int>> = points.into_iter().collect();
    let good: Vec<&Vec<Int>> = points
        .par_iter()
        .filter(|p| point_to_weights(p).is_ok_and(|ws| is_good(&ws, opts.wellformed)))
        .collect();
    let mut out = FamilyAnalysis::default();
    let off_boundary = good.iter().any(|p| {
        let diff: Vec<Int> = p.iter().zip(u).map(|(a, b)| a - b).collect();
        !on_ray(&diff, r1) && !on_ray(&diff, r2)
    });
    if good.iter().all(|p| *p == u) {
        out.truncated = 1;
        out.sporadic = good.iter().filter_map(|p| point_to_weights(p).ok()).collect();
        return out;
    }
    if off_boundary {
        let pattern = if good.len() == points.len() {
            Pattern::Residues {
                modulus: 1,
                residues: vec![0],
            }
        } else {
            Pattern::Partial {
                good: good.len(),
                scanned: points.len(),
            }
        };
        out.series.push(SeriesSolution {
            base: u.clone(),
            generators: fam.generators.clone(),
            pattern,
            status: Status::Experimental,
        });
        return out;
    }
    out.split_planes.push(SeriesSolution {
        base: u.clone(),
        generators: fam.generators.clone(),
        pattern: Pattern::Partial {
            good: good.len(),
            scanned: points.len(),
        },
        status: Status::Experimental,
    });
    out.merge(analyze_line(u, r1, opts)).merge(analyze_line(u, r2, opts))
}

/// Runs the symbolic tests and, for survivors, the member scan.
pub fn analyze_family(fam: &Family, opts: &SeriesOptions) -> FamilyAnalysis {
    match fam.dimension() {
        1 => analyze_line(&fam.base, &fam.rays[0], opts),
        2 => two_param(fam, opts),
        _ => FamilyAnalysis::default(),
    }
}

/// `v` is a nonnegative rational combination of `r1` and `r2`.
fn in_plane_cone(v: &[Int], r1: &[Int], r2: &[Int]) -> bool {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = r1[i] * r2[j] - r1[j] * r2[i];
            if det == 0 {
                continue;
            }
            let x = Q::new(v[i] * r2[j] - v[j] * r2[i], det);
            let y = Q::new(r1[i] * v[j] - r1[j] * v[i], det);
            let zero = Q::from_integer(0);
            return x >= zero
                && y >= zero
                && (0..n).all(|t| x * Q::from_integer(r1[t]) + y * Q::from_integer(r2[t]) == Q::from_integer(v[t]));
        }
    }
    false
}

fn line_in_plane(line: &SeriesSolution, plane: &SeriesSolution) -> bool {
    let r1 = &plane.generators[0];
    let r2 = plane.generators.last().unwrap();
    let diff: Vec<Int> = line.base.iter().zip(&plane.base).map(|(a, b)| a - b).collect();
    in_plane_cone(&diff, r1, r2) && in_plane_cone(&line.generators[0], r1, r2)
}

fn is_full(p: &Pattern) -> bool {
    matches!(p, Pattern::Residues { modulus: 1, .. })
}

/// Removes repeated series and drops one-parameter series whose every point
/// lies in a two-parameter series all of whose scanned points are good. Lines
/// inside a partially good plane keep their own residue pattern.
pub fn absorb_lines(mut series: Vec<SeriesSolution>) -> Vec<SeriesSolution> {
    series.sort_by(|a, b| (&a.base, &a.generators).cmp(&(&b.base, &b.generators)));
    series.dedup_by(|a, b| a.base == b.base && a.generators == b.generators);
    let planes: Vec<SeriesSolution> = series
        .iter()
        .filter(|x| x.dimension() == 2 && is_full(&x.pattern))
        .cloned()
        .collect();
    series
        .into_iter()
        .filter(|x| x.dimension() == 2 || !planes.iter().any(|p| line_in_plane(x, p)))
        .collect()
}

/// Number of series in the raw output: every surviving or split plane, plus
/// the distinct lines not contained in a full or split plane.
pub fn raw_series_count(an: &FamilyAnalysis) -> usize {
    let mut lines: Vec<&SeriesSolution> = an.series.iter().filter(|x| x.dimension() == 1).collect();
    lines.sort_by(|a, b| (&a.base, &a.generators).cmp(&(&b.base, &b.generators)));
    lines.dedup_by(|a, b| a.base == b.base && a.generators == b.generators);
    let planes: Vec<&SeriesSolution> = an.series.iter().filter(|x| x.dimension() == 2).collect();
    let covering: Vec<&SeriesSolution> = planes
        .iter()
        .copied()
        .filter(|p| is_full(&p.pattern))
        .chain(an.split_planes.iter())
        .collect();
    let free = lines
        .iter()
        .filter(|l| !covering.iter().any(|p| line_in_plane(l, p)))
        .count();
    planes.len() + an.split_planes.len() + free
}

/// Good members of a series with `λ` in the given range, in `λ` order.
pub fn good_members(s: &SeriesSolution, range: std::ops::Range<Int>, wellformed: bool) -> Vec<(Int, WeightSystem)> {
    let g = &s.generators[0];
    range
        .filter_map(|l| member_weights(&s.base, g, l).map(|ws| (l, ws)))
        .filter(|(_, ws)| is_good(ws, wellformed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbola_example() {
        assert_eq!(hyperbola_max_lambda(1, 2, 1, 4), Hyperbola::Max(Some(0)));
        assert_eq!(hyperbola_max_lambda(2, 4, 1, 2), Hyperbola::ConstantInteger(2));
        assert_eq!(hyperbola_max_lambda(1, 3, 1, 2), Hyperbola::Max(Some(0)));
        assert_eq!(hyperbola_max_lambda(1, 1, 2, 2), Hyperbola::ConstantNonInteger);
    }

    #[test]
    fn final_point_example() {
        let u = [20, 9, 4, 4, 4, 40];
        let g = [15, 7, 3, 3, 2, 30];
        assert_eq!(test_final_point(&u, &g), Verdict::Bounded(16));
        let opts = SeriesOptions::default();
        let got: Vec<String> = analyze_line(&u, &g, &opts).sporadic.iter().map(|w| w.to_string()).collect();
        assert!(got.contains(&"X_70 ⊂ P(35,16,7,7,6)".to_string()));
        assert!(got.contains(&"X_130 ⊂ P(65,30,13,13,10)".to_string()));
        assert!(got.contains(&"X_430 ⊂ P(215,100,43,43,30)".to_string()));
    }

    #[test]
    fn almost_identical() {
        assert_eq!(almost_identical_test(&[3, 1, 1, 1, 1, 8], &[4, 1, 1, 1, 1, 8]), Verdict::Bounded(0));
        assert_eq!(almost_identical_test(&[3, 2, 1, 1, 1, 14], &[4, 3, 1, 1, 1, 8]), Verdict::Bounded(5));
        assert_eq!(almost_identical_test(&[3, 2, 2, 1, 9], &[4, 3, 1, 2, 9]), Verdict::Inconclusive);
    }

    #[test]
    fn parity() {
        // Every member has four even weights of five and an even degree.
        assert_eq!(parity_test(&[2, 2, 2, 2, 1, 8], &[2, 4, 2, 2, 0, 8]), Parity::Reject);
        assert_eq!(parity_test(&[3, 2, 2, 1, 1, 10], &[2, 1, 1, 0, 0, 4]), Parity::Pass);
        assert_eq!(parity_test(&[2, 2, 2, 1, 1, 9], &[1, 1, 1, 0, 0, 4]), Parity::Only(1));
    }

    #[test]
    fn codim_two_bound() {
        // I = {1, 2}: u = 2k there, d - 2e = 5.
        assert_eq!(wf_codim2_bound(&[4, 2, 1, 1, 25], &[2, 1, 1, 0, 10]), Verdict::Bounded(3));
        // |d - αe| = α.
        assert_eq!(wf_codim2_bound(&[4, 2, 1, 1, 22], &[2, 1, 1, 0, 10]), Verdict::Bounded(0));
        assert_eq!(wf_codim2_bound(&[4, 2, 1, 1, 20], &[2, 1, 1, 0, 10]), Verdict::NotApplicable);
    }

    #[test]
    fn excluded_fourfold_series() {
        let u = [213, 107, 84, 15, 8, 2, 428];
        let g = [214, 107, 84, 15, 8, 0, 428];
        let b = Battery::run(&u, &g, true);
        let bound = b.bound.unwrap();
        assert!(bound <= 1);
        // The initial member already fails along P(213,84,15): only x_5 and
        // x_6 are tangent forms there.
        let opts = SeriesOptions::default();
        assert!(analyze_line(&u, &g, &opts).sporadic.is_empty());
        for l in bound + 1..bound + 50 {
            let ws = member_weights(&u, &g, l).unwrap();
            assert!(!is_good(&ws, true));
        }
    }

    #[test]
    fn pattern_detection() {
        let f = |v: &[u8]| v.iter().map(|&x| x == 1).collect::<Vec<_>>();
        assert_eq!(detect_pattern(&f(&[0, 0, 0, 0])), Pattern::Empty);
        assert_eq!(
            detect_pattern(&f(&[1, 1, 0, 1, 1, 0, 1, 1, 0])),
            Pattern::Residues {
                modulus: 3,
                residues: vec![0, 1]
            }
        );
    }

    #[test]
    fn text_round_trip() {
        let s = SeriesSolution {
            base: vec![3, 2, 2, 1, 6],
            generators: vec![vec![1, 1, 0, 0, 2]],
            pattern: Pattern::Residues {
                modulus: 3,
                residues: vec![0, 1],
            },
            status: Status::Experimental,
        };
        let line = s.text_line();
        assert_eq!(line, "u=[3,2,2,1,6] gen=[1,1,0,0,2] pattern=residues {0,1} mod 3 status=experimental");
        assert_eq!(SeriesSolution::parse_text_line(&line), Some(s));
    }
}
