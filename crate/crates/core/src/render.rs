//! Pictures of geodesic maps on the flat torus.
//!
//! A point of `S³` away from the two circles `x₁ = x₂ = 0` and
//! `x₃ = x₄ = 0` has two well-defined angles, the Hopf coordinates: the
//! argument of `(x₁, x₂)` and the argument of `(x₃, x₄)`.  Plotting both on
//! a square with opposite sides identified shows a geodesic map as a
//! drawing on the torus.  Edges are drawn as straight segments along the
//! shorter way round in each coordinate and split where they leave the
//! fundamental square.
//!
//! This is the only module that uses floating point; it is presentation
//! only, and its SVG output is deterministic.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{to_f64, Rational, Vector};
use crate::geodesic::{proper_faces, GeodesicMap};

/// Side length of the SVG canvas.
pub const CANVAS: f64 = 1000.0;
const MARGIN: f64 = 40.0;

/// The two Hopf angles of `p`, in turns, each in `[0, 1)`.
pub fn hopf_coords(p: &Vector) -> Result<(f64, f64)> {
    if p.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("Hopf coordinates need a point of R⁴, got dimension {}", p.dim())));
    }
    let c = p.coords();
    for (k, which) in [(0, "first"), (2, "second")] {
        if c[k].is_zero() && c[k + 1].is_zero() {
            return Err(Error::Degenerate(format!("{which} block of {p} is zero; its angle is undefined")));
        }
    }
    let angle = |u: &Rational, v: &Rational| (to_f64(v).atan2(to_f64(u)) / std::f64::consts::TAU).rem_euclid(1.0);
    Ok((angle(&c[0], &c[1]), angle(&c[2], &c[3])))
}

/// A labelled point of a layer.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Marker {
    pub at: (f64, f64),
    pub label: String,
}

/// One map's worth of drawing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Layer {
    /// Style tag, e.g. `plus-map`, `minus-map`.
    pub tag: String,
    pub polylines: Vec<Vec<(f64, f64)>>,
    pub markers: Vec<Marker>,
    /// Elements that could not be projected.
    pub warnings: Vec<String>,
}

/// A drawing on the torus `[0, size)²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusDiagram {
    pub size: f64,
    pub layers: Vec<Layer>,
}

/// Splits the segment from `p` to `p + delta` (unwrapped) into pieces
/// that each lie in one translate of the fundamental square, and moves
/// every piece into `[0, size)²`.
fn wrap_segment(p: (f64, f64), delta: (f64, f64), size: f64) -> Vec<Vec<(f64, f64)>> {
    let mut cuts = vec![0.0, 1.0];
    for (start, d) in [(p.0, delta.0), (p.1, delta.1)] {
        if d != 0.0 {
            let (lo, hi) = if d > 0.0 { (start, start + d) } else { (start + d, start) };
            let mut k = (lo / size).floor() + 1.0;
            while k * size < hi {
                let t = (k * size - start) / d;
                if t > 0.0 && t < 1.0 {
                    cuts.push(t);
                }
                k += 1.0;
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    cuts.dedup();
    let at = |t: f64| (p.0 + t * delta.0, p.1 + t * delta.1);
    cuts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let mid = at((w[0] + w[1]) / 2.0);
            let shift = ((mid.0 / size).floor() * size, (mid.1 / size).floor() * size);
            // Clamping absorbs rounding at the cut points.
            [at(w[0]), at(w[1])].iter().map(|&(x, y)| ((x - shift.0).clamp(0.0, size), (y - shift.1).clamp(0.0, size))).collect()
        })
        .collect()
}

/// The signed shortest way from `a` to `b` on a circle of length `size`.
fn shortest(a: f64, b: f64, size: f64) -> f64 {
    let d = (b - a).rem_euclid(size);
    if d > size / 2.0 {
        d - size
    } else {
        d
    }
}

/// Projects the vertices and edges of `map` to a layer.
pub fn map_layer(map: &GeodesicMap, tag: &str, size: f64) -> Layer {
    let mut layer = Layer { tag: tag.to_string(), polylines: Vec::new(), markers: Vec::new(), warnings: Vec::new() };
    let pos: Vec<Option<(f64, f64)>> = map
        .source
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| match hopf_coords(v) {
            Ok((a, b)) => Some((a * size, b * size)),
            Err(e) => {
                layer.warnings.push(format!("vertex {i}: {e}"));
                None
            }
        })
        .collect();
    for (i, p) in pos.iter().enumerate() {
        if let Some(at) = p {
            layer.markers.push(Marker { at: *at, label: i.to_string() });
        }
    }
    for face in proper_faces(&map.facets) {
        if face.count() != 2 {
            continue;
        }
        let e = face.to_vec();
        match (pos[e[0]], pos[e[1]]) {
            (Some(p), Some(q)) => {
                let delta = (shortest(p.0, q.0, size), shortest(p.1, q.1, size));
                layer.polylines.extend(wrap_segment(p, delta, size));
            }
            _ => layer.warnings.push(format!("edge {}-{}: end point not projectable", e[0], e[1])),
        }
    }
    layer
}

/// One layer per map, tagged `plus-map`, `minus-map` (or `map-k` beyond
/// two).
pub fn diagram(maps: &[&GeodesicMap], size: f64) -> TorusDiagram {
    let layers = maps
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let tag = match k {
                0 => "plus-map".to_string(),
                1 => "minus-map".to_string(),
                _ => format!("map-{k}"),
            };
            map_layer(m, &tag, size)
        })
        .collect();
    TorusDiagram { size, layers }
}

fn style(tag: &str) -> (&'static str, &'static str) {
    match tag {
        "plus-map" => ("#1f4e9c", ""),
        "minus-map" => ("#b8322a", " stroke-dasharray=\"8 5\""),
        _ => ("#444444", ""),
    }
}

/// SVG 1.1 text of a diagram on a fixed 1000×1000 canvas; the second
/// coordinate points up.
pub fn svg_string(d: &TorusDiagram) -> String {
    let scale = (CANVAS - 2.0 * MARGIN) / d.size;
    let x = |a: f64| MARGIN + a * scale;
    let y = |b: f64| CANVAS - MARGIN - b * scale;
    let mut s = String::new();
    let _ = writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    let side = CANVAS - 2.0 * MARGIN;
    let _ = writeln!(s, "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{side}\" height=\"{side}\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>");
    for layer in &d.layers {
        let (color, dash) = style(&layer.tag);
        let _ = writeln!(s, "<g id=\"{}\" stroke=\"{color}\" fill=\"none\" stroke-width=\"1.5\"{dash}>", layer.tag);
        for line in &layer.polylines {
            let pts: Vec<String> = line.iter().map(|&(a, b)| format!("{:.3},{:.3}", x(a), y(b))).collect();
            let _ = writeln!(s, "<polyline points=\"{}\"/>", pts.join(" "));
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, "<g id=\"{}-markers\" fill=\"{color}\" font-family=\"sans-serif\" font-size=\"12\">", layer.tag);
        for m in &layer.markers {
            let (cx, cy) = (x(m.at.0), y(m.at.1));
            let _ = writeln!(s, "<circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"4\"/>");
            let _ = writeln!(s, "<text x=\"{:.3}\" y=\"{:.3}\">{}</text>", cx + 5.0, cy - 5.0, m.label);
        }
        let _ = writeln!(s, "</g>");
        if !layer.warnings.is_empty() {
            let _ = writeln!(s, "<!-- {}: {} element(s) not projectable -->", layer.tag, layer.warnings.len());
        }
    }
    let _ = writeln!(s, "</svg>");
    s
}

/// Writes [`svg_string`] to `path`.
pub fn svg_write(d: &TorusDiagram, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, svg_string(d)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
