//! Widths and excesses of the gallery prismatoids and their bases.

use prismatoid::exact::rat;
use prismatoid::gallery::{cube_pair, gallery, gallery_bases, GALLERY_NAMES, PARAMS_32, PARAMS_40};
use prismatoid::hull::{facet_enumeration, polar_dual, VPolytope};
use prismatoid::prismatoid::{check_map_width_bound, check_width_bound, detect_bases, width, Prismatoid, WidthReport};
use prismatoid::Error;
use proptest::prelude::*;
use std::time::Duration;

fn gallery_prismatoid(name: &str) -> Prismatoid {
    let (t, b) = gallery_bases(name).unwrap();
    Prismatoid::assemble(&t, &b).unwrap()
}

/// Widths frozen from an independent floating-point hull followed by BFS
/// (`tests/oracles/gallery_hulls.py`).
#[test]
fn gallery_widths_and_excesses() {
    for (name, n, facets, w, excess) in
        [("q40", 40, 258, 6, rat(1, 35)), ("q32", 32, 258, 6, rat(1, 27)), ("q28", 28, 274, 6, rat(1, 23)), ("q20", 25, 244, 6, rat(1, 20))]
    {
        let p = gallery_prismatoid(name);
        let r = width(&p).unwrap();
        assert_eq!((r.n, r.d, r.facets, r.width), (n, 5, facets, w), "{name}");
        assert_eq!(r.prismatoid_excess, excess, "{name}");
        assert!(check_width_bound(&p).unwrap(), "{name}");
    }
}

#[test]
fn assembled_and_detected_bases_agree() {
    let p = gallery_prismatoid("q28");
    let body = gallery("q28").unwrap();
    let q = Prismatoid::detect(body).unwrap();
    let found = detect_bases(&q.facets);
    assert_eq!(found.len(), 1);
    let (top, bottom) = p.base_vertices();
    assert_eq!(top, (0..14).collect::<Vec<_>>());
    assert_eq!(bottom, (14..28).collect::<Vec<_>>());
    let (qt, qb) = q.base_vertices();
    let mut got = [qt, qb];
    got.sort();
    assert_eq!(got, [top, bottom]);
}

#[test]
fn cube_pair_facet_counts() {
    let (pp, pm) = cube_pair(PARAMS_40);
    assert_eq!(facet_enumeration(&pp).unwrap().len(), 20);
    assert_eq!(facet_enumeration(&pm).unwrap().len(), 20);
    let (pp, _) = cube_pair(PARAMS_32);
    assert_eq!(pp.n(), 32);
    assert_eq!(facet_enumeration(&pp).unwrap().len(), 16);
}

#[test]
fn small_gallery_bases_have_expected_polars() {
    let (t, b) = gallery_bases("q20").unwrap();
    assert_eq!((t.n(), b.n()), (12, 13));
    assert_eq!(facet_enumeration(&polar_dual(&t).unwrap()).unwrap().len(), 12);
    assert_eq!(facet_enumeration(&polar_dual(&b).unwrap()).unwrap().len(), 13);
}

#[test]
fn width_report_arithmetic() {
    let r = WidthReport::from_counts(40, 20, 36_425, 21, Duration::ZERO).unwrap();
    assert_eq!(r.prismatoid_excess, rat(1, 20));
    assert_eq!(r.hirsch_excess_of_dual, rat(1, 20));
    assert!(matches!(WidthReport::from_counts(5, 5, 10, 1, Duration::ZERO), Err(Error::InvalidArgument(_))));
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["prismatoid_excess"], "1/20");
    assert_eq!(json["dim"], 20);
}

#[test]
fn gallery_rejects_unknown_names() {
    assert!(matches!(gallery("q99"), Err(Error::UnknownGallery(_))));
    assert!(GALLERY_NAMES.iter().all(|n| gallery(n).is_ok()));
}

#[test]
fn from_body_requires_unit_base_coordinate() {
    let body = gallery("q20").unwrap();
    assert!(matches!(Prismatoid::from_body(body.clone(), 7), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(Prismatoid::from_body(body, 0), Err(Error::InvalidArgument(_))));
}

/// Two 4-simplices in general position: every non-base facet is the join of
/// faces with dimensions summing to 3, and crossing a ridge moves one vertex
/// across, so the bases are 5 steps apart while `n/3 + 1 = 13/3`.  An
/// independent Qhull computation gives width 5 for such pairs as well.
#[test]
fn two_simplex_bases_exceed_the_literal_bound() {
    let top = VPolytope::from_int_rows(&[vec![0, 0, 0, 0], vec![3, 0, 0, 0], vec![0, 3, 0, 0], vec![0, 0, 3, 0], vec![0, 0, 0, 3]]).unwrap();
    let bottom = VPolytope::from_int_rows(&[vec![2, 2, 2, 2], vec![-1, 2, 2, 2], vec![2, -1, 2, 2], vec![2, 2, -1, 2], vec![2, 2, 2, -1]]).unwrap();
    let p = Prismatoid::assemble(&top, &bottom).unwrap();
    let r = width(&p).unwrap();
    assert_eq!((r.n, r.width), (10, 5));
    assert!(!check_width_bound(&p).unwrap());
    assert!(check_map_width_bound(&p).unwrap());
}

/// Integer points with `|x|² = 50`: any subset is in convex position.
fn sphere_points() -> Vec<Vec<i64>> {
    let r = -7i64..=7;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    if a * a + b * b + c * c + d * d == 50 {
                        out.push(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn sphere_base() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (5usize..10).prop_flat_map(|n| prop::sample::subsequence(sphere_points(), n)).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    /// The width of the pair of maps is at most `n/3 + 1` on random
    /// 5-prismatoids (bases that are not full-dimensional are skipped).
    #[test]
    fn map_width_bound_on_random_prismatoids(top in sphere_base(), bottom in sphere_base()) {
        let (Ok(top), Ok(bottom)) = (VPolytope::from_int_rows(&top), VPolytope::from_int_rows(&bottom)) else { return Ok(()) };
        let Ok(p) = Prismatoid::assemble(&top, &bottom) else { return Ok(()) };
        prop_assert_eq!(p.n(), top.n() + bottom.n());
        prop_assert!(check_map_width_bound(&p).unwrap());
    }
}
