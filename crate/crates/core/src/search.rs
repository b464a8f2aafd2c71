//! The branching search over tangent monomials at the coordinate points
//! `P_1, ..., P_{s-1}`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::bounds::{max_power_at, max_power_first, MaxPower};
use crate::error::Error;
use crate::linalg::{Family, Int, TangentMonomialMatrix};
use crate::weights::WeightSystem;

/// A tangent monomial `x_i^{m-1} x_j` at `P_i`, stored as `(m, j)` with `j`
/// 1-based.
pub type Pair = (u32, usize);

#[derive(Clone, Debug)]
pub struct SearchNode {
    pub matrix: TangentMonomialMatrix,
    /// 1-based index of the next coordinate point to constrain.
    pub point_index: usize,
    pub chosen: Vec<Pair>,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub s: usize,
    pub k: i64,
    /// `(index, total)`: keep only root pairs whose position is `index` mod `total`.
    pub shard: Option<(usize, usize)>,
}

impl SearchConfig {
    pub fn new(s: usize, k: i64) -> Self {
        SearchConfig { s, k, shard: None }
    }

    /// Root pairs handled by this configuration, in traversal order.
    pub fn root_pairs(&self) -> Vec<Pair> {
        let all = max_power_first(self.s, self.k);
        match self.shard {
            None => all,
            Some((i, n)) => all
                .into_iter()
                .enumerate()
                .filter(|(pos, _)| pos % n == i)
                .map(|(_, p)| p)
                .collect(),
        }
    }
}

/// Union of the solution sets of a subtree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawOutput {
    /// Points `(a_1, ..., a_s, d)`.
    pub sporadic: BTreeSet<Vec<Int>>,
    pub families: BTreeSet<Family>,
    /// Branches whose solution polyhedron had a recession cone of dimension
    /// above two, rendered with their chosen pairs.
    pub unsupported: Vec<String>,
}

impl RawOutput {
    pub fn merge(mut self, other: RawOutput) -> RawOutput {
        self.sporadic.extend(other.sporadic);
        self.families.extend(other.families);
        self.unsupported.extend(other.unsupported);
        self
    }

    pub fn len(&self) -> usize {
        self.sporadic.len() + self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn monomial_row(s: usize, i: usize, (m, j): Pair) -> Vec<Int> {
    let mut row = vec![0; s];
    row[i - 1] += Int::from(m) - 1;
    row[j - 1] += 1;
    row
}

impl SearchNode {
    pub fn root(s: usize, k: i64) -> Self {
        SearchNode {
            matrix: TangentMonomialMatrix::initial(s, k),
            point_index: 1,
            chosen: Vec::new(),
        }
    }

    pub fn child(&self, pair: Pair) -> SearchNode {
        let s = self.matrix.s();
        let row = monomial_row(s, self.point_index, pair);
        let mut chosen = self.chosen.clone();
        chosen.push(pair);
        SearchNode {
            matrix: self.matrix.with_monomial(&row).echelon_reduce(),
            point_index: self.point_index + 1,
            chosen,
        }
    }

    /// Candidate pairs at the current point; `None` marks a terminal node
    /// whose matrix goes to the solver.
    pub fn candidate_pairs(&self, k: i64) -> Option<Vec<Pair>> {
        let s = self.matrix.s();
        if self.point_index >= s {
            return None;
        }
        if self.point_index == 1 {
            return Some(max_power_first(s, k));
        }
        let shape = self.matrix.last_row_shape().ok()?;
        if shape.index < self.point_index {
            // The new row was dependent on earlier ones; nothing bounds m_i.
            return None;
        }
        let mut p = vec![0; shape.index - self.point_index];
        p.extend_from_slice(&shape.p);
        let padded = crate::linalg::RowShape { index: self.point_index, p, ..shape };
        match max_power_at(&padded) {
            MaxPower::Bound(m) => {
                let mut out = Vec::new();
                for m in 2..=m.max(1) {
                    for j in 1..=s {
                        out.push((m as u32, j));
                    }
                }
                Some(out)
            }
            MaxPower::NoSolutions => Some(Vec::new()),
            MaxPower::Unbounded => None,
        }
    }

    /// Children in `(m, j)` order; empty for terminal and dead nodes.
    pub fn expand(&self, k: i64) -> Vec<SearchNode> {
        self.candidate_pairs(k)
            .unwrap_or_default()
            .into_iter()
            .map(|p| self.child(p))
            .collect()
    }

    pub fn describe(&self) -> String {
        let pairs: Vec<String> = self.chosen.iter().map(|(m, j)| format!("({m},{j})")).collect();
        pairs.join(" ")
    }
}

fn solve_terminal(node: &SearchNode) -> RawOutput {
    let mut out = RawOutput::default();
    match node.matrix.solve_weight_system() {
        Ok(sol) => {
            out.sporadic.extend(sol.sporadic);
            out.families.extend(sol.families);
        }
        Err(e) => out.unsupported.push(format!("{} : {e}", node.describe())),
    }
    out
}

/// Depth-first search of the subtree below `node`, parallel over children.
pub fn search_subtree(node: &SearchNode, k: i64) -> RawOutput {
    assert!(node.point_index <= node.matrix.s(), "search deeper than s");
    match node.candidate_pairs(k) {
        None => solve_terminal(node),
        Some(pairs) => pairs
            .into_par_iter()
            .map(|p| search_subtree(&node.child(p), k))
            .reduce(RawOutput::default, RawOutput::merge),
    }
}

pub fn search_root_pair(cfg: &SearchConfig, pair: Pair) -> RawOutput {
    let root = SearchNode::root(cfg.s, cfg.k);
    search_subtree(&root.child(pair), cfg.k)
}

/// Runs every root pair of the configuration not in `skip`, calling
/// `on_done` as each finishes (in completion order).
pub fn run_search(
    cfg: &SearchConfig,
    skip: &BTreeSet<Pair>,
    on_done: impl Fn(Pair, &RawOutput) + Sync,
) -> RawOutput {
    cfg.root_pairs()
        .into_par_iter()
        .filter(|p| !skip.contains(p))
        .map(|p| {
            let out = search_root_pair(cfg, p);
            on_done(p, &out);
            out
        })
        .reduce(RawOutput::default, RawOutput::merge)
}

/// Sorted, duplicate-free weight systems ordered by `(d, a_1, ..., a_s)`.
pub fn dedup(items: impl IntoIterator<Item = WeightSystem>) -> Vec<WeightSystem> {
    let mut v: Vec<WeightSystem> = items.into_iter().collect();
    v.sort_by(|x, y| (x.degree(), x.weights()).cmp(&(y.degree(), y.weights())));
    v.dedup();
    v
}

/// Converts a solver point `(a_1, ..., a_s, d)` into a weight system.
pub fn point_to_weights(point: &[Int]) -> Result<WeightSystem, Error> {
    let (d, a) = point.split_last().ok_or_else(|| Error::InvalidWeights("empty point".into()))?;
    let conv = |x: Int| u64::try_from(x).map_err(|_| Error::InvalidWeights(format!("entry {x} out of range")));
    let weights: Result<Vec<u64>, Error> = a.iter().map(|&x| conv(x)).collect();
    WeightSystem::new(weights?, conv(*d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_branch_x2_y3() {
        let root = SearchNode::root(3, -1);
        let pairs = root.candidate_pairs(-1).unwrap();
        assert!(pairs.contains(&(2, 1)));
        let n = root.child((2, 1)).child((3, 2));
        assert_eq!(
            n.matrix.rows(),
            &[vec![1, 0, 3, -1, 3], vec![0, 1, 4, -1, 4], vec![0, 0, 6, -1, 6]]
        );
        assert_eq!(n.candidate_pairs(-1), None);
        let out = search_subtree(&n, -1);
        let fam = out.families.iter().next().unwrap();
        assert_eq!(fam.base, vec![3, 2, 2, 6]);
        assert_eq!(fam.generators, vec![vec![3, 2, 1, 6]]);
    }

    #[test]
    fn c_zero_is_terminal() {
        let n = SearchNode::root(3, -1).child((2, 1)).child((3, 3));
        assert_eq!(n.matrix.last_row_shape().unwrap().c, 0);
        assert_eq!(n.candidate_pairs(-1), None);
    }

    #[test]
    fn dedup_orders_by_degree() {
        let a = WeightSystem::new(vec![3, 2, 2], 6).unwrap();
        let b = WeightSystem::new(vec![1, 1, 1], 3).unwrap();
        assert_eq!(dedup([a.clone(), b.clone(), a.clone()]), vec![b, a]);
    }
}
