//! Torus pictures of geodesic maps.

use prismatoid::exact::{int, Vector};
use prismatoid::geodesic::central_fan;
use prismatoid::render::{diagram, hopf_coords, map_layer, svg_string, svg_write, TorusDiagram};
use prismatoid::twisted::{default_alpha, default_tol, lattice_points, twisted_vertices, LatticePoint, Parity};
use prismatoid::Error;

fn twisted_map(d: usize, q: usize) -> prismatoid::geodesic::GeodesicMap {
    let l = lattice_points(d, q, Parity::Plus).unwrap();
    central_fan(&twisted_vertices(&l, &default_alpha(), &default_tol()).unwrap()).unwrap()
}

#[test]
fn hopf_coordinates_recover_lattice_angles() {
    let l = lattice_points(3, 2, Parity::Plus).unwrap();
    let v = twisted_vertices(&l, &default_alpha(), &default_tol()).unwrap();
    let k = l.points.iter().position(|p| *p == LatticePoint::int(1, 1, 6)).unwrap();
    let (a, b) = hopf_coords(&v.vertices[k]).unwrap();
    assert!((a - 1.0 / 6.0).abs() < 1e-6 && (b - 1.0 / 6.0).abs() < 1e-6, "({a}, {b})");
}

#[test]
fn hopf_rejects_degenerate_points() {
    assert!(matches!(hopf_coords(&Vector::from_ints(&[0, 0, 1, 0])), Err(Error::Degenerate(_))));
    assert!(matches!(hopf_coords(&Vector::from_ints(&[1, 0, 1])), Err(Error::DimensionMismatch(_))));
    let (a, b) = hopf_coords(&Vector(vec![int(0), int(-1), int(-1), int(0)])).unwrap();
    assert_eq!((a, b), (0.75, 0.5));
}

#[test]
fn one_marker_per_vertex() {
    let g = twisted_map(3, 5);
    let layer = map_layer(&g, "plus-map", 1.0);
    assert_eq!(layer.markers.len(), 45);
    assert!(layer.warnings.is_empty());
    assert!(layer.polylines.iter().flatten().all(|&(x, y)| (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)));
}

#[test]
fn svg_output_is_deterministic() {
    let g = twisted_map(3, 2);
    let d1 = svg_string(&diagram(&[&g], 1.0));
    let d2 = svg_string(&diagram(&[&g], 1.0));
    assert_eq!(d1, d2);
    assert!(d1.starts_with("<?xml"));
    assert!(d1.contains("id=\"plus-map\""));
}

#[test]
fn empty_diagram_is_a_frame() {
    let s = svg_string(&TorusDiagram { size: 1.0, layers: Vec::new() });
    assert_eq!(s.matches("<rect").count(), 1);
    assert!(!s.contains("<polyline"));
    let dir = std::env::temp_dir().join(format!("render-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("frame.svg");
    svg_write(&TorusDiagram { size: 1.0, layers: Vec::new() }, &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), s);
    std::fs::remove_dir_all(&dir).unwrap();
}
