//! Helpers shared by the integration tests: brute-force oracles that are
//! deliberately naive and independent of the library's kernels.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prismatoid::exact::{int, nullspace, rank, Rational};
use prismatoid::hull::{affine_dimension, VPolytope};

/// Affine dimension of a point set, by rank of the difference vectors.
pub fn affine_rank(points: &[&[Rational]]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let diffs: Vec<Vec<Rational>> =
        points[1..].iter().map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect()).collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs)
    }
}

fn combinations(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Facets of a full-dimensional point set as incidence sets, by testing
/// the hyperplane through every `dim`-subset for being supporting.
pub fn brute_force_facets(p: &VPolytope) -> BTreeSet<Vec<usize>> {
    let d = p.dim;
    let mut subsets = Vec::new();
    combinations(p.n(), d, 0, &mut Vec::new(), &mut subsets);
    let mut out = BTreeSet::new();
    for s in subsets {
        // Rows (x, 1); a kernel vector (a, -b) gives a·x = b.
        let rows: Vec<Vec<Rational>> = s.iter().map(|&i| p.vertices[i].0.iter().cloned().chain([int(1)]).collect()).collect();
        let ker = nullspace(&rows, d + 1);
        if ker.len() != 1 {
            continue;
        }
        let h = &ker[0].0;
        let val = |i: usize| -> Rational { p.vertices[i].0.iter().zip(h).map(|(x, a)| x * a).sum::<Rational>() + &h[d] };
        let vals: Vec<Rational> = (0..p.n()).map(val).collect();
        let pos = vals.iter().any(|v| v.is_positive());
        let neg = vals.iter().any(|v| v.is_negative());
        if !(pos && neg) {
            out.insert((0..p.n()).filter(|&i| vals[i].is_zero()).collect());
        }
    }
    out
}

/// Facet pairs whose common points span a `(dim−2)`-dimensional face.
pub fn brute_force_adjacency(p: &VPolytope, facets: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let common: Vec<&[Rational]> =
                facets[i].iter().filter(|v| facets[j].contains(v)).map(|&v| p.vertices[v].0.as_slice()).collect();
            if !common.is_empty() && affine_rank(&common) + 2 == p.dim {
                out.insert((i, j));
            }
        }
    }
    out
}

/// A random full-dimensional polytope: `n` integer points in `[-10, 10]^d`.
pub fn random_polytope(rng: &mut ChaCha8Rng, d: usize, n: usize) -> VPolytope {
    loop {
        let pts: Vec<Vec<i64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-10..=10)).collect()).collect();
        let p = VPolytope::from_int_rows(&pts).unwrap();
        let distinct: BTreeSet<_> = pts.iter().collect();
        if distinct.len() == n && affine_dimension(&p) == d {
            return p;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The `d`-cube `[-1, 1]^d`.
pub fn cube(d: usize) -> VPolytope {
    let rows: Vec<Vec<i64>> = (0..1usize << d).map(|m| (0..d).map(|k| if m >> k & 1 == 1 { 1 } else { -1 }).collect()).collect();
    VPolytope::from_int_rows(&rows).unwrap()
}

/// The `d`-dimensional cross-polytope.
pub fn cross_polytope(d: usize) -> VPolytope {
    let mut rows = Vec::new();
    for k in 0..d {
        for s in [1, -1] {
            rows.push((0..d).map(|j| if j == k { s } else { 0 }).collect::<Vec<i64>>());
        }
    }
    VPolytope::from_int_rows(&rows).unwrap()
}

/// Points `(t, t², …, t^d)` of the moment curve.
pub fn cyclic_polytope(d: usize, n: usize) -> VPolytope {
    let rows: Vec<Vec<i64>> = (1..=n as i64).map(|t| (1..=d as u32).map(|k| t.pow(k)).collect()).collect();
    VPolytope::from_int_rows(&rows).unwrap()
}
