//! Exhaustive search for the smallest incidence patterns that force a
//! pair of maps to have width larger than two.
//!
//! A candidate is a bipartite digraph between `p` "plus" and `r` "minus"
//! nodes in which every cross pair is in one of three states (no arrow,
//! plus→minus, minus→plus) — so there are no 2-cycles — and every node has
//! out-degree at least two.  The search is a plain backtracking over the
//! `3^{p·r}` states with the only pruning being that a node whose
//! undecided pairs cannot lift its out-degree to two is abandoned.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest node count the oracle accepts.
pub const MAX_ORACLE_NODES: usize = 9;

/// Arrow state of a cross pair `(i, j)`, plus node `i`, minus node `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum PairState {
    None = 0,
    PlusToMinus = 1,
    MinusToPlus = 2,
}

/// A pattern as a `p × r` matrix of pair states, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartitePattern {
    pub plus: usize,
    pub minus: usize,
    pub states: Vec<PairState>,
}

impl BipartitePattern {
    pub fn state(&self, i: usize, j: usize) -> PairState {
        self.states[i * self.minus + j]
    }

    pub fn arrow_count(&self) -> usize {
        self.states.iter().filter(|s| **s != PairState::None).count()
    }

    /// Canonical code under independent permutations of the two sides.
    ///
    /// For a fixed order of the plus nodes, the best order of the minus
    /// nodes sorts their columns, so only the `p!` row orders are tried.
    pub fn canonical(&self) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        let mut rows: Vec<usize> = (0..self.plus).collect();
        loop {
            let mut cols: Vec<Vec<u8>> =
                (0..self.minus).map(|j| rows.iter().map(|&i| self.state(i, j) as u8).collect()).collect();
            cols.sort();
            let code: Vec<u8> = cols.concat();
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
            if !next_permutation(&mut rows) {
                break;
            }
        }
        best.unwrap_or_default()
    }
}

/// Advances to the lexicographically next permutation; `false` at the end.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else { return false };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Calls `visit` on every pattern with `p` plus and `r` minus nodes, no
/// 2-cycles and all out-degrees at least `min_out`.
pub fn for_each_pattern(p: usize, r: usize, min_out: usize, mut visit: impl FnMut(&BipartitePattern)) {
    let mut pat = BipartitePattern { plus: p, minus: r, states: vec![PairState::None; p * r] };
    // Out-degree and undecided pairs, plus nodes first.
    let mut out = vec![0usize; p + r];
    let mut open: Vec<usize> = (0..p).map(|_| r).chain((0..r).map(|_| p)).collect();
    fn rec(
        k: usize,
        pat: &mut BipartitePattern,
        out: &mut [usize],
        open: &mut [usize],
        min_out: usize,
        visit: &mut dyn FnMut(&BipartitePattern),
    ) {
        if k == pat.states.len() {
            visit(pat);
            return;
        }
        let (i, j) = (k / pat.minus, k % pat.minus);
        let (a, b) = (i, pat.plus + j);
        open[a] -= 1;
        open[b] -= 1;
        for s in [PairState::None, PairState::PlusToMinus, PairState::MinusToPlus] {
            let src = match s {
                PairState::None => None,
                PairState::PlusToMinus => Some(a),
                PairState::MinusToPlus => Some(b),
            };
            if let Some(x) = src {
                out[x] += 1;
            }
            if out[a] + open[a] >= min_out && out[b] + open[b] >= min_out {
                pat.states[k] = s;
                rec(k + 1, pat, out, open, min_out, visit);
            }
            if let Some(x) = src {
                out[x] -= 1;
            }
        }
        pat.states[k] = PairState::None;
        open[a] += 1;
        open[b] += 1;
    }
    rec(0, &mut pat, &mut out, &mut open, min_out, &mut visit);
}

/// Solutions and isomorphism classes for one side split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCount {
    pub plus: usize,
    pub minus: usize,
    pub patterns: usize,
    pub classes: usize,
}

/// Counts patterns and their classes under side-preserving relabelling.
pub fn count_split(p: usize, r: usize) -> SplitCount {
    let mut patterns = 0;
    let mut classes = std::collections::HashSet::new();
    for_each_pattern(p, r, 2, |pat| {
        patterns += 1;
        classes.insert(pat.canonical());
    });
    SplitCount { plus: p, minus: r, patterns, classes: classes.len() }
}

/// Summary of [`minimal_pattern_oracle`].
#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub max_nodes: usize,
    /// Smallest total node count admitting a pattern, if any up to
    /// `max_nodes`.
    pub minimum_nodes: Option<usize>,
    /// Splits `(p, r)`, `p ≤ r`, admitting a pattern at the minimum.
    pub feasible_splits: Vec<(usize, usize)>,
    /// Every split searched, with counts.
    pub searched: Vec<SplitCount>,
    /// Classes of the balanced 4+4 split (when searched).
    pub classes_4_4: Option<usize>,
    /// Classes of the 3+6 split (when `max_nodes ≥ 9`).
    pub classes_3_6: Option<usize>,
}

/// Searches all splits with at most `max_nodes` nodes in increasing order
/// and stops after the first node count that admits a pattern; the 3+6
/// split is counted as well when `max_nodes ≥ 9`.
pub fn minimal_pattern_oracle(max_nodes: usize) -> Result<OracleSummary> {
    if max_nodes > MAX_ORACLE_NODES {
        return Err(Error::InvalidArgument(format!("at most {MAX_ORACLE_NODES} nodes can be searched, got {max_nodes}")));
    }
    let mut searched = Vec::new();
    let mut minimum_nodes = None;
    let mut feasible_splits = Vec::new();
    for total in 2..=max_nodes {
        for p in 1..=total / 2 {
            let c = count_split(p, total - p);
            if c.patterns > 0 {
                feasible_splits.push((p, total - p));
            }
            searched.push(c);
        }
        if !feasible_splits.is_empty() {
            minimum_nodes = Some(total);
            break;
        }
    }
    let classes_4_4 = searched.iter().find(|c| c.plus == 4 && c.minus == 4).map(|c| c.classes);
    let classes_3_6 = if max_nodes >= 9 {
        let c = count_split(3, 6);
        let k = c.classes;
        searched.push(c);
        Some(k)
    } else {
        None
    };
    Ok(OracleSummary { max_nodes, minimum_nodes, feasible_splits, searched, classes_4_4, classes_3_6 })
}
