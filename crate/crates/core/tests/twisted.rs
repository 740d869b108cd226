//! Twisted products of polygons: lattices, predicted facets, exact hulls
//! and the two-copies prismatoid.

use proptest::prelude::*;

use prismatoid::exact::{rat, rational_circle_point, Rational};
use prismatoid::hull::facet_enumeration;
use prismatoid::prismatoid::width;
use prismatoid::twisted::{
    default_alpha, default_alpha_small, default_tol, facet_kind_counts, lattice_points, predicted_facets, predicted_minus_facets,
    twisted_vertices, two_copies_prismatoid, verify_twisted_hull, LatticePoint, Parity,
};
use prismatoid::Error;

#[test]
fn lattices_have_m_times_d_points() {
    for (d, q) in [(3, 1), (3, 2), (4, 2), (5, 3)] {
        let m = d * q;
        assert_eq!(lattice_points(d, q, Parity::Plus).unwrap().points.len(), m * d);
        if q % 2 == 0 {
            let l = lattice_points(d, q, Parity::Minus).unwrap();
            assert_eq!(l.points.len(), m * d);
            assert!(l.points.iter().all(|p| p.a2 % 2 == 1 && p.b2 % 2 == 1));
        }
    }
    assert!(matches!(lattice_points(3, 3, Parity::Minus), Err(Error::InvalidArgument(_))));
    assert!(matches!(lattice_points(2, 2, Parity::Plus), Err(Error::InvalidArgument(_))));
    assert_eq!(LatticePoint { a2: 3, b2: 4 }.to_string(), "(3/2,2)");
}

#[test]
fn predicted_counts_follow_closed_form() {
    for (d, q) in [(3, 1), (3, 2), (3, 4), (4, 2), (5, 2), (3, 5)] {
        let m = d * q;
        let f = predicted_facets(d, q).unwrap();
        assert_eq!(f.len(), m * (m - d + 2), "d={d}, q={q}");
        let kinds = facet_kind_counts(&f);
        assert_eq!(kinds.get("vertical"), Some(&m));
        assert_eq!(kinds.get("horizontal"), Some(&m));
        assert_eq!(kinds.get("diagonal").copied().unwrap_or(0), m * d * (q - 1));
    }
    assert_eq!(predicted_facets(3, 5).unwrap().len(), 210);
}

/// Every triangle of a predicted tetrahedron lies in exactly two
/// predicted facets, as a ridge must.
#[test]
fn tetrahedron_ridges_lie_in_two_facets() {
    for (d, q) in [(3, 2), (4, 3)] {
        let f = predicted_facets(d, q).unwrap();
        for facet in f.iter().filter(|g| g.vertices.len() == 4) {
            for skip in 0..4 {
                let tri: Vec<LatticePoint> = facet.vertices.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, p)| *p).collect();
                let owners = f.iter().filter(|g| tri.iter().all(|p| g.vertices.contains(p))).count();
                assert_eq!(owners, 2, "d={d}, q={q}: {tri:?}");
            }
        }
    }
}

#[test]
fn twisted_hulls_match_prediction() {
    let (alpha, tol) = (default_alpha(), default_tol());
    for (d, q) in [(3, 1), (3, 2), (3, 4), (4, 2), (5, 2), (3, 5)] {
        let r = verify_twisted_hull(d, q, &alpha, &tol).unwrap();
        assert!(r.pass, "d={d}, q={q}: {r:?}");
        assert_eq!(r.computed_facets, d * q * (d * q - d + 2));
    }
}

#[test]
fn q_one_is_a_product_of_polygons() {
    for d in [3, 4, 5] {
        let r = verify_twisted_hull(d, 1, &default_alpha(), &default_tol()).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed_facets, 2 * d);
    }
}

#[test]
fn minus_hull_matches_its_prediction() {
    let l = lattice_points(3, 2, Parity::Minus).unwrap();
    let v = twisted_vertices(&l, &default_alpha().swapped(), &default_tol()).unwrap();
    let fl = facet_enumeration(&v).unwrap();
    let computed: std::collections::BTreeSet<std::collections::BTreeSet<LatticePoint>> =
        fl.facets.iter().map(|f| f.incident.iter().map(|k| l.points[k]).collect()).collect();
    let predicted: std::collections::BTreeSet<_> = predicted_minus_facets(3, 2).unwrap().into_iter().collect();
    assert_eq!(computed, predicted);
}

#[test]
fn tolerance_must_separate_angles() {
    let l = lattice_points(3, 2, Parity::Plus).unwrap();
    assert!(matches!(twisted_vertices(&l, &default_alpha(), &rat(1, 48)), Err(Error::InvalidArgument(_))));
    let bad = rational_circle_point(&rat(3, 8), &rat(1, 1000)).unwrap();
    assert!(matches!(twisted_vertices(&l, &bad, &default_tol()), Err(Error::InvalidArgument(_))));
}

#[test]
fn two_copies_of_small_parameters() {
    let tc = two_copies_prismatoid(3, 2, &default_alpha_small(), &default_tol(), 6).unwrap();
    let (top, bottom) = tc.prismatoid.base_vertices();
    assert_eq!((top.len(), bottom.len()), (30, 30));
    assert_eq!(width(&tc.prismatoid).unwrap().width, 5);
    assert!(matches!(two_copies_prismatoid(3, 3, &default_alpha_small(), &default_tol(), 1), Err(Error::InvalidArgument(_))));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Twisted vertices lie exactly on the sphere of radius one.
    #[test]
    fn vertices_lie_on_unit_sphere(d in 3usize..6, q in 1usize..4, num in 1i64..24) {
        let alpha = rational_circle_point(&rat(num, 100), &rat(1, 10_000)).unwrap();
        let l = lattice_points(d, q, Parity::Plus).unwrap();
        let v = twisted_vertices(&l, &alpha, &default_tol()).unwrap();
        for x in &v.vertices {
            let norm: Rational = x.0.iter().map(|c| c * c).sum();
            prop_assert_eq!(norm, rat(1, 1));
        }
    }
}
