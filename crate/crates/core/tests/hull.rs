//! Facet enumeration against closed-form counts and a brute-force oracle.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use prismatoid::exact::{int, rat, Vector};
use prismatoid::gallery::gallery;
use prismatoid::hull::{facet_enumeration, interior_point, polar_dual, validate_facets, VPolytope};
use prismatoid::Error;

use common::{brute_force_facets, cross_polytope, cube, cyclic_polytope, random_polytope, rng};

fn incidence_sets(p: &VPolytope) -> BTreeSet<Vec<usize>> {
    facet_enumeration(p).unwrap().facets.iter().map(|f| f.incident.to_vec()).collect()
}

#[test]
fn closed_form_facet_counts() {
    // (polytope, facets): cubes have 2d, cross-polytopes 2^d, and cyclic
    // polytopes follow the upper bound theorem.
    let cases = [
        (cube(4), 8),
        (cross_polytope(4), 16),
        (cyclic_polytope(4, 7), 14),
        (cyclic_polytope(4, 8), 20),
        (cyclic_polytope(5, 8), 20),
    ];
    for (p, want) in cases {
        let fl = facet_enumeration(&p).unwrap();
        assert_eq!(fl.len(), want);
        assert!(validate_facets(&fl).pass);
    }
}

/// Counts frozen from an independent floating-point hull (Qhull, facets
/// merged by their normalized equations); see `tests/oracles/gallery_hulls.py`.
#[test]
fn gallery_facet_counts_match_frozen_oracle() {
    for (name, n, facets) in [("q40", 40, 258), ("q32", 32, 258), ("q28", 28, 274), ("q20", 25, 244)] {
        let p = gallery(name).unwrap();
        assert_eq!(p.n(), n, "{name}");
        let fl = facet_enumeration(&p).unwrap();
        assert_eq!(fl.len(), facets, "{name}");
        assert!(validate_facets(&fl).pass, "{name}");
    }
}

#[test]
fn non_extreme_points_are_tolerated() {
    // The square with its center and an edge midpoint.
    let p = VPolytope::from_int_rows(&[vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1], vec![1, 0]]).unwrap();
    let fl = facet_enumeration(&p).unwrap();
    assert_eq!(fl.len(), 4);
    let bottom = fl.facets.iter().find(|f| f.incident.contains(5)).unwrap();
    assert_eq!(bottom.incident.to_vec(), vec![0, 1, 5]);
    assert!(fl.facets.iter().all(|f| !f.incident.contains(4)));
}

#[test]
fn degenerate_inputs_are_rejected() {
    let flat = VPolytope::from_int_rows(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).unwrap();
    assert!(matches!(facet_enumeration(&flat), Err(Error::Degenerate(_))));
    let dup = VPolytope::from_int_rows(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
    assert!(matches!(facet_enumeration(&dup), Err(Error::Degenerate(_))));
}

#[test]
fn polar_of_cube_is_cross_polytope() {
    let dual = polar_dual(&cube(3)).unwrap();
    assert_eq!(dual.n(), 6);
    assert_eq!(facet_enumeration(&dual).unwrap().len(), 8);
    let c = interior_point(&cube(3)).unwrap();
    assert_eq!(c, Vector(vec![int(0), int(0), int(0)]));
}

#[test]
fn rational_coordinates_are_handled_exactly() {
    let p = VPolytope::new(vec![
        Vector(vec![rat(0, 1), rat(0, 1)]),
        Vector(vec![rat(1, 3), rat(0, 1)]),
        Vector(vec![rat(0, 1), rat(2, 7)]),
        Vector(vec![rat(1, 6), rat(1, 7)]),
    ])
    .unwrap();
    // The last point is the midpoint of the hypotenuse.
    let fl = facet_enumeration(&p).unwrap();
    assert_eq!(fl.len(), 3);
    assert!(fl.facets.iter().any(|f| f.incident.to_vec() == vec![1, 2, 3]));
}

#[test]
fn random_polytopes_match_brute_force() {
    let mut r = rng(0x5eed);
    for k in 0..40 {
        let d = 3 + k % 3;
        let n = d + 2 + k % (13 - d - 1);
        let p = random_polytope(&mut r, d, n);
        assert_eq!(incidence_sets(&p), brute_force_facets(&p), "case {k}: d={d}, n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    /// Every enumerated facet list passes the independent certificate and
    /// is invariant under reordering of the input points.
    #[test]
    fn facets_validate_and_ignore_input_order(seed in any::<u64>(), d in 2usize..5, extra in 1usize..7) {
        let mut r = rng(seed);
        let p = random_polytope(&mut r, d, d + 1 + extra);
        let fl = facet_enumeration(&p).unwrap();
        prop_assert!(validate_facets(&fl).pass);
        let n = p.n();
        let rev = VPolytope::new(p.vertices.iter().rev().cloned().collect()).unwrap();
        let back: BTreeSet<Vec<usize>> = incidence_sets(&rev)
            .into_iter()
            .map(|s| { let mut v: Vec<usize> = s.into_iter().map(|i| n - 1 - i).collect(); v.sort(); v })
            .collect();
        prop_assert_eq!(back, incidence_sets(&p));
    }
}
