//! Dual graphs of polytopes: facet adjacency computed from incidence
//! bit-vectors, and breadth-first distance queries.
//!
//! Two facets of a `d`-polytope are adjacent when they share a ridge.  The
//! kernel first keeps every pair with at least `d−1` common vertices (one
//! AND plus popcount per word), then, for each facet `F`, retains only the
//! candidates whose common-vertex set with `F` is maximal among `F`'s
//! candidates.  A ridge of `F` is a maximal proper face, and any smaller
//! face with `≥ d−1` vertices sits inside some ridge, so the filter is exact
//! also for non-simplicial polytopes.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::hull::FacetList;

/// The facet adjacency graph of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub facet_count: usize,
    /// Sorted neighbor lists.
    pub adjacency: Vec<Vec<usize>>,
    pub polytope_dim: usize,
}

/// Counters from one run of the adjacency kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdjacencyStats {
    /// Unordered facet pairs whose common vertices were counted: `C(f, 2)`.
    pub pairs_examined: u64,
    /// Pairs with at least `d−1` common vertices.
    pub candidate_pairs: u64,
    /// Adjacent pairs after the maximality filter.
    pub edges: u64,
}

impl DualGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Adjacency export, one line per facet: `"i: j k l"`.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for (i, nb) in self.adjacency.iter().enumerate() {
            s.push_str(&i.to_string());
            s.push(':');
            for j in nb {
                s.push(' ');
                s.push_str(&j.to_string());
            }
            s.push('\n');
        }
        s
    }
}

/// Facet adjacency of a validated facet list.
pub fn build_adjacency(fl: &FacetList) -> DualGraph {
    build_adjacency_with_stats(fl).0
}

/// [`build_adjacency`] also returning the kernel counters.
pub fn build_adjacency_with_stats(fl: &FacetList) -> (DualGraph, AdjacencyStats) {
    let sets = fl.incidence_sets();
    let m = BitMatrix::from_sets(&sets, fl.source.n());
    let (adjacency, stats) = adjacency_from_matrix(&m, fl.polytope_dim);
    (DualGraph { facet_count: fl.len(), adjacency, polytope_dim: fl.polytope_dim }, stats)
}

/// The adjacency kernel on a packed incidence matrix of a `d`-polytope.
///
/// Facets `i` and `j` are adjacent iff they share at least `d−1` vertices
/// and their common set is not strictly contained in the common set of `i`
/// with some other facet.  Each facet scans all others independently, so
/// memory stays linear in the number of facets (every pair is counted from
/// both ends).
pub fn adjacency_from_matrix(m: &BitMatrix, d: usize) -> (Vec<Vec<usize>>, AdjacencyStats) {
    let f = m.rows;
    let threshold = d.saturating_sub(1) as u32;
    let per_facet: Vec<(Vec<usize>, u64)> = (0..f)
        .into_par_iter()
        .map(|i| {
            let ri = m.row(i);
            let mut cand: Vec<usize> = Vec::new();
            let mut commons: Vec<Vec<u64>> = Vec::new();
            for j in (0..f).filter(|&j| j != i) {
                let c: Vec<u64> = ri.iter().zip(m.row(j)).map(|(x, y)| x & y).collect();
                if c.iter().map(|w| w.count_ones()).sum::<u32>() >= threshold {
                    cand.push(j);
                    commons.push(c);
                }
            }
            let above = cand.iter().filter(|&&j| j > i).count() as u64;
            let mut keep = Vec::new();
            for (a, &j) in cand.iter().enumerate() {
                let sa = &commons[a];
                let dominated = commons.iter().enumerate().any(|(b, sb)| {
                    b != a && sa.iter().zip(sb).all(|(x, y)| x & !y == 0) && sa != sb
                });
                debug_assert!(
                    dominated || commons.iter().enumerate().all(|(b, sb)| b == a || sb != sa),
                    "two facets share the same maximal common set with facet {i}"
                );
                if !dominated {
                    keep.push(j);
                }
            }
            (keep, above)
        })
        .collect();
    let candidate_pairs = per_facet.iter().map(|(_, c)| c).sum();
    let adjacency: Vec<Vec<usize>> = per_facet.into_iter().map(|(a, _)| a).collect();
    let edges = adjacency.iter().map(|a| a.len() as u64).sum::<u64>() / 2;
    let pairs_examined = (f as u64) * (f as u64).saturating_sub(1) / 2;
    (adjacency, AdjacencyStats { pairs_examined, candidate_pairs, edges })
}

/// BFS distances from a set of sources (`None` = unreachable).
pub fn bfs_from(g: &DualGraph, sources: &[usize]) -> Result<Vec<Option<usize>>> {
    let mut dist = vec![None; g.facet_count];
    let mut queue = VecDeque::new();
    for &s in sources {
        if s >= g.facet_count {
            return Err(Error::IndexOutOfRange { index: s, size: g.facet_count });
        }
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &g.adjacency[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// Graph distance between two facets.
pub fn bfs_distance(g: &DualGraph, from: usize, to: usize) -> Result<usize> {
    if to >= g.facet_count {
        return Err(Error::IndexOutOfRange { index: to, size: g.facet_count });
    }
    bfs_from(g, &[from])?[to].ok_or(Error::Disconnected { from, to })
}

/// Largest BFS distance from any source to any facet.
pub fn eccentricity_scan(g: &DualGraph, sources: &[usize]) -> Result<usize> {
    if sources.is_empty() {
        return Err(Error::InvalidArgument("empty source set".into()));
    }
    let mut best = 0;
    for &s in sources {
        let dist = bfs_from(g, &[s])?;
        for (t, d) in dist.iter().enumerate() {
            match d {
                Some(d) => best = best.max(*d),
                None => return Err(Error::Disconnected { from: s, to: t }),
            }
        }
    }
    Ok(best)
}
