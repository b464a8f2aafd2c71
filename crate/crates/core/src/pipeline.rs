//! The full classification run: search, series analysis, removal of sporadic
//! cases that lie in series, and singularity classification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checkpoint::Checkpoint;
use crate::error::Error;
use crate::jk::{jk_series, series_key};
use crate::linalg::{Family, Int};
use crate::search::{dedup, point_to_weights, run_search, RawOutput, SearchConfig};
use crate::series::{
    absorb_lines, analyze_family, member, raw_series_count, FamilyAnalysis, Pattern, SeriesOptions, SeriesSolution,
    Status, TWO_PARAM_DEPTH,
};
use crate::singularity::{hypersurface_singularities, SingularityReport, Verdict};
use crate::verify::{is_quasismooth_general, is_wellformed_hypersurface};
use crate::weights::{Invariants, WeightSystem};

/// Which sporadic cases count as lying in a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReorderPolicy {
    /// Only members whose series weights are already non-increasing.
    InOrder,
    /// Any member, after sorting its weights.
    Reordered,
}

impl ReorderPolicy {
    /// Threefolds and index-one surfaces keep the cases found only after
    /// reordering; other runs remove them.
    pub fn default_for(dim: usize, k: i64) -> Self {
        if dim == 3 || (dim == 2 && k == -1) {
            ReorderPolicy::InOrder
        } else {
            ReorderPolicy::Reordered
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Filter {
    #[default]
    All,
    Canonical,
    Terminal,
    Smooth,
}

impl Filter {
    pub fn accepts(self, v: Verdict) -> bool {
        match self {
            Filter::All => true,
            Filter::Canonical => v.is_canonical(),
            Filter::Terminal => v.is_terminal(),
            Filter::Smooth => v == Verdict::Smooth,
        }
    }
}

impl std::str::FromStr for Filter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Filter::All),
            "canonical" => Ok(Filter::Canonical),
            "terminal" => Ok(Filter::Terminal),
            "smooth" => Ok(Filter::Smooth),
            _ => Err(format!("unknown filter {s:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub wellformed: bool,
    /// Members scanned per surviving series.
    pub scan: usize,
    pub shard: Option<(usize, usize)>,
    pub reorder: Option<ReorderPolicy>,
    pub filter: Filter,
    /// Members checked for canonical singularities per series when the
    /// closed form gives no shortcut.
    pub singularity_window: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            wellformed: true,
            scan: 100,
            shard: None,
            reorder: None,
            filter: Filter::All,
            singularity_window: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Sporadic,
    /// Series index in the output and coefficients of the member.
    Series { id: usize, lambda: Vec<Int> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub ws: WeightSystem,
    pub wellformed: bool,
    pub quasismooth: bool,
    pub report: SingularityReport,
    pub invariants: Invariants,
    pub provenance: Provenance,
}

impl ClassificationRecord {
    pub fn new(ws: WeightSystem, provenance: Provenance) -> Self {
        let wellformed = is_wellformed_hypersurface(&ws);
        let quasismooth = is_quasismooth_general(&ws);
        // Below dimension two the verdict is that of the surface obtained by
        // adding unit weights, which is smooth exactly when every such cone is.
        let target = if ws.dim() < 2 {
            ws.with_unit_weights((2 - ws.dim()) as usize)
        } else {
            ws.clone()
        };
        let report = hypersurface_singularities(&target).unwrap_or(SingularityReport {
            singularities: Vec::new(),
            verdict: Verdict::NotCanonical,
        });
        let invariants = ws.invariants(1);
        ClassificationRecord {
            ws,
            wellformed,
            quasismooth,
            report,
            invariants,
            provenance,
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.report.verdict
    }
}

/// A final series with its display form and the members checked for singularities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub solution: SeriesSolution,
    /// Closed form matched in the double-cover stage, with its base weights.
    pub jk_base: Option<Vec<u64>>,
    /// `X_{...} ⊂ P(...) for all ...`.
    pub display: String,
    pub members: Vec<ClassificationRecord>,
}

/// A sporadic case removed because it lies in a series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InSeries {
    pub ws: WeightSystem,
    pub series: usize,
    pub lambda: Vec<Int>,
    pub reordered: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub raw_sporadic: usize,
    pub raw_series: usize,
    pub series: usize,
    pub sporadic: usize,
    pub canonical: usize,
    pub terminal: usize,
    pub smooth: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub dim: usize,
    pub k: i64,
    pub sporadic: Vec<ClassificationRecord>,
    pub series: Vec<SeriesEntry>,
    /// Removed as members of a series.
    pub in_series: Vec<InSeries>,
    /// Sporadic cases that lie in a series only after reordering and were kept.
    pub kept_reordered: Vec<InSeries>,
    pub counts: Counts,
    pub warnings: Vec<String>,
    pub unsupported: usize,
    pub unresolved: usize,
    /// Raw search families before any series analysis, rendered.
    pub raw_families: Vec<String>,
}

impl Classification {
    /// 0 success, 3 unsupported family dimension, 2 unresolved series.
    pub fn exit_code(&self) -> i32 {
        if self.unsupported > 0 {
            3
        } else if self.unresolved > 0 {
            2
        } else {
            0
        }
    }

    /// Records passing the filter: sporadic first, then series members.
    pub fn records(&self, filter: Filter) -> Vec<&ClassificationRecord> {
        self.sporadic
            .iter()
            .chain(self.series.iter().flat_map(|s| s.members.iter()))
            .filter(|r| filter.accepts(r.verdict()))
            .collect()
    }
}

/// Searches the root pairs of this run not already in the checkpoint.
pub fn search_stage(dim: usize, k: i64, opts: &ClassifyOptions, checkpoint: Option<&Checkpoint>) -> Result<RawOutput, Error> {
    let cfg = SearchConfig {
        s: dim + 2,
        k,
        shard: opts.shard,
    };
    let (done, previous) = match checkpoint {
        Some(c) => (c.done().clone(), c.output().clone()),
        None => (BTreeSet::new(), RawOutput::default()),
    };
    let fresh = run_search(&cfg, &done, |pair, out| {
        if let Some(c) = checkpoint {
            // A failed append only costs recomputation on resume.
            let _ = c.record(pair, out);
        }
    });
    Ok(previous.merge(fresh))
}

/// Full classification in one process.
pub fn classify(dim: usize, k: i64, opts: &ClassifyOptions) -> Result<Classification, Error> {
    let raw = search_stage(dim, k, opts, None)?;
    Ok(finish(dim, k, &raw, opts))
}

/// Post-processing of a complete raw output.
pub fn finish(dim: usize, k: i64, raw: &RawOutput, opts: &ClassifyOptions) -> Classification {
    let mut warnings = Vec::new();
    for branch in &raw.unsupported {
        warnings.push(format!("unsupported family dimension: {branch}"));
    }
    let wellformed = opts.wellformed;
    let series_opts = SeriesOptions {
        scan: opts.scan,
        wellformed,
    };
    let good: Vec<WeightSystem> = raw
        .sporadic
        .par_iter()
        .filter_map(|p| point_to_weights(p).ok())
        .filter(|ws| crate::verify::is_good(ws, wellformed))
        .collect();
    // Two-parameter expansion and the truncation battery.
    let families: Vec<_> = raw.families.iter().cloned().collect();
    let an = families
        .par_iter()
        .map(|f| analyze_family(f, &series_opts))
        .reduce(FamilyAnalysis::default, FamilyAnalysis::merge);
    let raw_series = raw_series_count(&an);
    let mut sporadic = good;
    sporadic.extend(an.sporadic.iter().cloned());
    let sporadic = dedup(sporadic);
    let raw_sporadic = sporadic.len();

    let mut solutions: Vec<SeriesSolution> = absorb_lines(an.series)
        .into_iter()
        .filter(|s| s.pattern != Pattern::Empty)
        .collect();
    // Closed-form series.
    let mut jk_bases = Vec::with_capacity(solutions.len());
    for s in solutions.iter_mut() {
        let jk = if k == -1 { jk_form(s) } else { None };
        if let Some(b) = &jk {
            *s = jk_series(b);
        }
        jk_bases.push(jk);
    }
    let mut order: Vec<usize> = (0..solutions.len()).collect();
    order.sort_by_key(|&i| sort_key(&solutions[i]));
    let solutions: Vec<SeriesSolution> = order.iter().map(|&i| solutions[i].clone()).collect();
    let jk_bases: Vec<Option<Vec<u64>>> = order.iter().map(|&i| jk_bases[i].clone()).collect();

    // Sporadic cases lying in a series.
    let policy = opts.reorder.unwrap_or(ReorderPolicy::default_for(dim, k));
    let max_degree = sporadic.iter().map(|w| w.degree()).max().unwrap_or(0);
    let index = member_index(&solutions, max_degree, &mut warnings);
    let mut in_series = Vec::new();
    let mut kept_reordered = Vec::new();
    let mut remaining = Vec::new();
    for ws in sporadic {
        match index.get(&ws) {
            Some(hit) if !hit.reordered || policy == ReorderPolicy::Reordered => in_series.push(hit.clone()),
            Some(hit) => {
                kept_reordered.push(hit.clone());
                remaining.push(ws);
            }
            None => remaining.push(ws),
        }
    }

    // Singularities.
    let sporadic_records: Vec<ClassificationRecord> = remaining
        .into_par_iter()
        .map(|ws| ClassificationRecord::new(ws, Provenance::Sporadic))
        .collect();
    let mut unresolved = 0;
    let entries: Vec<SeriesEntry> = solutions
        .iter()
        .enumerate()
        .map(|(id, s)| {
            if matches!(s.pattern, Pattern::Irregular(_) | Pattern::Partial { .. }) {
                unresolved += 1;
                warnings.push(format!("unresolved series {}", s.text_line()));
            }
            let start = display_start(s, id, &in_series);
            let members = series_members(s, id, jk_bases[id].is_some(), opts, wellformed);
            SeriesEntry {
                display: render_series(s, start),
                solution: s.clone(),
                jk_base: jk_bases[id].clone(),
                members,
            }
        })
        .collect();

    let mut counted: BTreeMap<&WeightSystem, Verdict> = BTreeMap::new();
    for r in sporadic_records.iter().chain(entries.iter().flat_map(|e| e.members.iter())) {
        counted.insert(&r.ws, r.verdict());
    }
    let counts = Counts {
        raw_sporadic,
        raw_series,
        series: entries.len(),
        sporadic: sporadic_records.len(),
        canonical: counted.values().filter(|v| v.is_canonical()).count(),
        terminal: counted.values().filter(|v| v.is_terminal()).count(),
        smooth: counted.values().filter(|&&v| v == Verdict::Smooth).count(),
    };
    Classification {
        dim,
        k,
        sporadic: sporadic_records,
        series: entries,
        in_series,
        kept_reordered,
        counts,
        warnings,
        unsupported: raw.unsupported.len(),
        unresolved,
        raw_families: raw.families.iter().map(render_family).collect(),
    }
}

/// Raw family with parameters `λ, μ, ...`, e.g.
/// `X_{6+6λ} ⊂ P(3+3λ,2+2λ,2+λ)`.
pub fn render_family(f: &Family) -> String {
    const NAMES: [&str; 4] = ["λ", "μ", "ν", "ρ"];
    let term = |i: usize| -> String {
        let mut t = f.base[i].to_string();
        for (g, name) in f.generators.iter().zip(NAMES) {
            match g[i] {
                0 => {}
                1 => t.push_str(&format!("+{name}")),
                c => t.push_str(&format!("+{c}{name}")),
            }
        }
        t
    };
    let n = f.base.len() - 1;
    let w: Vec<String> = (0..n).map(term).collect();
    format!("X_{{{}}} ⊂ P({})", term(n), w.join(","))
}

/// Base weights `b` when the series is `(c-1, b, 2; 2c) + λ(c, b, 0; 2c)` up
/// to the order of the weights, with `c = Σ b`.
pub fn jk_form(s: &SeriesSolution) -> Option<Vec<u64>> {
    if s.dimension() != 1 {
        return None;
    }
    let g = &s.generators[0];
    let n = g.len() - 1;
    let c = g[n] / 2;
    if g[n] % 2 != 0 || c <= 1 {
        return None;
    }
    // The generator entries other than the zero and `c` are the base weights.
    let mut rest: Vec<Int> = g[..n].to_vec();
    let zero = rest.iter().position(|&x| x == 0)?;
    rest.remove(zero);
    let cpos = rest.iter().position(|&x| x == c)?;
    rest.remove(cpos);
    if rest.iter().sum::<Int>() != c || rest.iter().any(|&x| x <= 0) {
        return None;
    }
    let mut base: Vec<u64> = rest.iter().map(|&x| x as u64).collect();
    base.sort_unstable_by(|a, b| b.cmp(a));
    (series_key(&jk_series(&base)) == series_key(s)).then_some(base)
}

fn modulus_of(p: &Pattern) -> (Int, usize) {
    match p {
        Pattern::Residues { modulus, residues } => (*modulus, residues.len()),
        _ => (Int::MAX, usize::MAX),
    }
}

fn sort_key(s: &SeriesSolution) -> (std::cmp::Reverse<usize>, Int, usize, Int, Int, Vec<Int>) {
    let (m, r) = modulus_of(&s.pattern);
    let n = s.base.len() - 1;
    let gd = s.generators.iter().map(|g| g[n]).sum();
    (std::cmp::Reverse(s.dimension()), m, r, gd, s.base[n], s.base.clone())
}

/// Lowest `λ` with every entry of `u + λ g` positive, when `g >= 0`.
fn lowest_positive(u: &[Int], g: &[Int]) -> Option<Int> {
    if g.iter().any(|&x| x < 0) {
        return None;
    }
    let mut lo = Int::MIN;
    for (&x, &y) in u.iter().zip(g) {
        if y == 0 {
            if x <= 0 {
                return None;
            }
        } else {
            lo = lo.max(Int::div_euclid(1 - x + y - 1, y));
        }
    }
    Some(lo)
}

fn non_increasing(p: &[Int]) -> bool {
    let w = &p[..p.len() - 1];
    w.windows(2).all(|x| x[0] >= x[1])
}

/// Cap on members indexed per two-parameter series.
const PLANE_INDEX_CAP: usize = 2_000_000;

/// Sorted members of every series up to `max_degree`, keyed by weight system.
/// A member found in order wins over one found only after reordering.
fn member_index(series: &[SeriesSolution], max_degree: u64, warnings: &mut Vec<String>) -> HashMap<WeightSystem, InSeries> {
    let mut index: HashMap<WeightSystem, InSeries> = HashMap::new();
    let max_degree = max_degree as Int;
    let mut insert = |p: Vec<Int>, id: usize, lambda: Vec<Int>| {
        let Ok(ws) = point_to_weights(&p) else { return };
        let reordered = !non_increasing(&p);
        let hit = InSeries {
            ws: ws.clone(),
            series: id,
            lambda,
            reordered,
        };
        match index.get(&ws) {
            Some(old) if !old.reordered || reordered => {}
            _ => {
                index.insert(ws, hit);
            }
        }
    };
    for (id, s) in series.iter().enumerate() {
        let n = s.base.len() - 1;
        if s.dimension() == 1 {
            let g = &s.generators[0];
            let Some(lo) = lowest_positive(&s.base, g) else {
                warnings.push(format!("series with negative direction skipped in series membership: {}", s.text_line()));
                continue;
            };
            if g[n] <= 0 {
                continue;
            }
            let mut l = lo;
            loop {
                let p = member(&s.base, g, l);
                if p[n] > max_degree {
                    break;
                }
                insert(p, id, vec![l]);
                l += 1;
            }
        } else {
            let gens = &s.generators;
            if gens.iter().any(|g| g[n] <= 0 || g.iter().any(|&x| x < 0)) {
                warnings.push(format!("plane skipped in series membership: {}", s.text_line()));
                continue;
            }
            let mut coeffs = vec![0 as Int; gens.len()];
            let mut count = 0usize;
            'outer: loop {
                let mut p = s.base.clone();
                for (c, g) in coeffs.iter().zip(gens) {
                    for (x, y) in p.iter_mut().zip(g) {
                        *x += c * y;
                    }
                }
                if p[n] <= max_degree {
                    insert(p, id, coeffs.clone());
                    count += 1;
                    if count > PLANE_INDEX_CAP {
                        warnings.push(format!("plane index truncated in series membership: {}", s.text_line()));
                        break;
                    }
                }
                let mut i = 0;
                loop {
                    if i == coeffs.len() {
                        break 'outer;
                    }
                    coeffs[i] += 1;
                    let deg: Int = s.base[n] + coeffs.iter().zip(gens).map(|(c, g)| c * g[n]).sum::<Int>();
                    if deg <= max_degree {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
            }
        }
    }
    index
}

/// Start of the displayed range, as `(λ of the displayed base, first n)`.
fn display_start(s: &SeriesSolution, id: usize, removed: &[InSeries]) -> (Int, Int) {
    if s.dimension() != 1 {
        return (0, 0);
    }
    let first_good = match &s.pattern {
        Pattern::Residues { residues, .. } => residues.first().copied().unwrap_or(0),
        Pattern::Irregular(v) => v.first().copied().unwrap_or(0),
        _ => 0,
    };
    let extension = removed
        .iter()
        .filter(|r| r.series == id && r.reordered && r.lambda[0] < first_good)
        .map(|r| r.lambda[0])
        .min();
    match extension {
        None => (first_good, 0),
        Some(e) => {
            // Base shown at the first point in order; the range reaches back
            // to the reordered member.
            let g = &s.generators[0];
            let mut l = e;
            while l < first_good && !non_increasing(&member(&s.base, g, l)) {
                l += 1;
            }
            (l, e - l)
        }
    }
}

fn join(v: &[Int]) -> String {
    v.iter().map(Int::to_string).collect::<Vec<_>>().join(",")
}

fn residue_phrase(modulus: Int, residues: &[Int], first: Int) -> String {
    match (modulus, residues) {
        (1, _) => format!("for all n ≥ {first}"),
        (2, [0]) => format!("for all even n ≥ {first}"),
        (2, [1]) => format!("for all odd n ≥ {first}"),
        _ => {
            let r: Vec<String> = residues.iter().map(Int::to_string).collect();
            let list = match r.len() {
                0 => String::new(),
                1 => r[0].clone(),
                _ => format!("{} or {}", r[..r.len() - 1].join(", "), r[r.len() - 1]),
            };
            format!("for all n ≥ {first} congruent to {list} mod {modulus}")
        }
    }
}

/// One-line rendering, e.g. `X_{6+2n} ⊂ P((3,2,2,1)+n(1,1,0,0)) for all n ≥ 0`.
pub fn render_series(s: &SeriesSolution, (shift, first): (Int, Int)) -> String {
    let n = s.base.len() - 1;
    if s.dimension() == 2 {
        let names = ["m", "n", "p", "q"];
        let mut deg = s.base[n].to_string();
        let mut amb = format!("({})", join(&s.base[..n]));
        for (g, name) in s.generators.iter().zip(names) {
            let coef = if g[n] == 1 { String::new() } else { g[n].to_string() };
            deg.push_str(&format!("+{coef}{name}"));
            amb.push_str(&format!("+{name}({})", join(&g[..n])));
        }
        let vars: Vec<&str> = names[..s.generators.len().min(names.len())].iter().rev().copied().collect();
        let range = match &s.pattern {
            Pattern::Partial { good, scanned } => format!("for {good} of {scanned} scanned points"),
            _ => format!("for all {} ≥ 0", vars.join(",")),
        };
        return format!("X_{{{deg}}} ⊂ P({amb}) {range}");
    }
    let g = &s.generators[0];
    let u = member(&s.base, g, shift);
    let coef = if g[n] == 1 { String::new() } else { g[n].to_string() };
    let head = format!("X_{{{}+{coef}n}} ⊂ P(({})+n({}))", u[n], join(&u[..n]), join(&g[..n]));
    let range = match &s.pattern {
        Pattern::Residues { modulus, residues } => {
            let shifted: BTreeSet<Int> = residues.iter().map(|r| (r - shift).rem_euclid(*modulus)).collect();
            let shifted: Vec<Int> = shifted.into_iter().collect();
            residue_phrase(*modulus, &shifted, first)
        }
        Pattern::Truncated(l) => format!("for n ≤ {}", l - shift),
        Pattern::Irregular(v) => {
            let r: Vec<Int> = v.iter().map(|x| x - shift).collect();
            format!("for n in {{{}}} (no period found)", join(&r))
        }
        Pattern::Empty => "empty".to_string(),
        Pattern::Partial { good, scanned } => format!("for {good} of {scanned} scanned points"),
    };
    format!("{head} {range}")
}

/// Members checked for singularities. Closed-form series have only the first member
/// as a candidate for canonical singularities.
fn series_members(s: &SeriesSolution, id: usize, closed_form: bool, opts: &ClassifyOptions, wellformed: bool) -> Vec<ClassificationRecord> {
    let mut points: Vec<(Vec<Int>, Vec<Int>)> = Vec::new();
    if s.dimension() == 1 {
        let g = &s.generators[0];
        let window = if closed_form { 1 } else { opts.singularity_window as Int };
        let mut taken = 0;
        let mut l = 0;
        while taken < window && l < opts.scan.max(opts.singularity_window) as Int {
            let allowed = match &s.pattern {
                Pattern::Residues { modulus, residues } => residues.contains(&l.rem_euclid(*modulus)),
                Pattern::Irregular(v) => v.contains(&l),
                _ => true,
            };
            if allowed {
                points.push((member(&s.base, g, l), vec![l]));
                taken += 1;
            }
            l += 1;
        }
    } else {
        let gens = &s.generators;
        let mut coeffs = vec![0usize; gens.len()];
        loop {
            let mut p = s.base.clone();
            for (c, g) in coeffs.iter().zip(gens) {
                for (x, y) in p.iter_mut().zip(g) {
                    *x += *c as Int * y;
                }
            }
            points.push((p, coeffs.iter().map(|&c| c as Int).collect()));
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    break;
                }
                coeffs[i] += 1;
                if coeffs.iter().sum::<usize>() <= TWO_PARAM_DEPTH {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == coeffs.len() {
                break;
            }
        }
    }
    let mut out: Vec<ClassificationRecord> = points
        .into_par_iter()
        .filter_map(|(p, lambda)| {
            let ws = point_to_weights(&p).ok()?;
            crate::verify::is_good(&ws, wellformed).then(|| ClassificationRecord::new(ws, Provenance::Series { id, lambda }))
        })
        .collect();
    // Keep the first good member and every canonical one.
    let first = out.first().cloned();
    out.retain(|r| r.verdict().is_canonical());
    if let Some(f) = first {
        if out.first() != Some(&f) {
            out.insert(0, f);
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|r| seen.insert(r.ws.clone()));
    out
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "raw_series {} raw_sporadic {} series {} sporadic {} canonical {} terminal {} smooth {}",
            self.raw_series, self.raw_sporadic, self.series, self.sporadic, self.canonical, self.terminal, self.smooth
        )
    }
}

/// Status of the series after closed-form matching.
pub fn series_status(e: &SeriesEntry) -> Status {
    if e.jk_base.is_some() {
        Status::Proved
    } else {
        e.solution.status
    }
}
