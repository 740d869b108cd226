//! Dual-graph construction against a ridge-scan oracle, and BFS helpers.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use prismatoid::graph::{bfs_distance, bfs_from, build_adjacency, build_adjacency_with_stats, eccentricity_scan};
use prismatoid::hull::{facet_enumeration, validate_facets};
use prismatoid::Error;

use common::{brute_force_adjacency, cross_polytope, cube, cyclic_polytope, random_polytope, rng};

fn edge_set(adjacency: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    adjacency.iter().enumerate().flat_map(|(i, nb)| nb.iter().filter(move |&&j| j > i).map(move |&j| (i, j))).collect()
}

#[test]
fn cube_dual_graph_is_cross_polytope_graph() {
    let fl = facet_enumeration(&cube(4)).unwrap();
    let (g, stats) = build_adjacency_with_stats(&fl);
    // Every facet of the 4-cube meets all but its opposite.
    assert!(g.adjacency.iter().all(|nb| nb.len() == 6));
    assert_eq!(stats.edges, 24);
    assert_eq!(stats.pairs_examined, 28);
    assert_eq!(eccentricity_scan(&g, &[0]).unwrap(), 2);
}

#[test]
fn simplicial_polytopes_have_d_neighbours_per_facet() {
    for p in [cross_polytope(4), cyclic_polytope(4, 8), cyclic_polytope(5, 9)] {
        let fl = facet_enumeration(&p).unwrap();
        let g = build_adjacency(&fl);
        assert!(g.adjacency.iter().all(|nb| nb.len() == p.dim));
    }
}

#[test]
fn bfs_rejects_bad_indices() {
    let g = build_adjacency(&facet_enumeration(&cube(3)).unwrap());
    assert!(matches!(bfs_distance(&g, 0, 99), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(bfs_from(&g, &[99]), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(eccentricity_scan(&g, &[]), Err(Error::InvalidArgument(_))));
}

#[test]
fn export_lists_every_facet() {
    let g = build_adjacency(&facet_enumeration(&cube(3)).unwrap());
    let text = g.to_lines();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.split_whitespace().count() == 5));
}

#[test]
fn random_polytopes_match_ridge_scan() {
    let mut r = rng(0xad1);
    for k in 0..40 {
        let d = 3 + k % 3;
        let n = d + 2 + k % (13 - d - 1);
        let p = random_polytope(&mut r, d, n);
        let fl = facet_enumeration(&p).unwrap();
        let sets: Vec<Vec<usize>> = fl.facets.iter().map(|f| f.incident.to_vec()).collect();
        let g = build_adjacency(&fl);
        assert_eq!(edge_set(&g.adjacency), brute_force_adjacency(&p, &sets), "case {k}: d={d}, n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    /// The kernel agrees with the adjacency derived from intrinsic ridges,
    /// and neighbour lists are symmetric and sorted.
    #[test]
    fn kernel_matches_intrinsic_ridges(seed in any::<u64>(), d in 2usize..5, extra in 1usize..6) {
        let p = random_polytope(&mut rng(seed), d, d + 1 + extra);
        let fl = facet_enumeration(&p).unwrap();
        let g = build_adjacency(&fl);
        let rep = validate_facets(&fl);
        prop_assert!(rep.pass);
        prop_assert_eq!(&g.adjacency, &rep.adjacency);
        for (i, nb) in g.adjacency.iter().enumerate() {
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(nb.iter().all(|&j| g.adjacency[j].contains(&i)));
            prop_assert!(nb.len() >= d);
        }
    }
}
