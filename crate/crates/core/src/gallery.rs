//! Explicit coordinates of the small wide prismatoids and of the
//! 20-dimensional non-Hirsch polytope, transcribed as exact rationals.
//!
//! Rows containing `±` entries are expanded into every sign combination,
//! `+` before `−`, earlier coordinates varying slowest.

use crate::error::{Error, Result};
use crate::exact::{int, parse_rational, rat, Rational, Vector};
use crate::hull::{polar_dual, VPolytope};

/// Names accepted by [`gallery`].
pub const GALLERY_NAMES: [&str; 5] = ["q40", "q32", "q28", "q20", "nonhirsch20"];

/// One printed matrix entry: a rational, optionally with a `±` sign.
#[derive(Clone, Copy)]
struct E(i64, i64, bool);

const fn v(n: i64) -> E {
    E(n, 1, false)
}
const fn pm(n: i64) -> E {
    E(n, 1, true)
}
const fn fr(n: i64, d: i64) -> E {
    E(n, d, false)
}

/// Expands a printed row with `±` entries into its sign combinations.
fn expand(row: &[E]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
    for &E(n, d, signed) in row {
        let x = rat(n, d);
        out = if signed && n != 0 {
            out.into_iter().flat_map(|r| [r.clone(), r].into_iter().enumerate().map(|(k, mut r)| {
                r.push(if k == 0 { x.clone() } else { -x.clone() });
                r
            })).collect()
        } else {
            out.into_iter().map(|mut r| {
                r.push(x.clone());
                r
            }).collect()
        };
    }
    out
}

fn block(rows: &[&[E]]) -> Vec<Vector> {
    rows.iter().flat_map(|r| expand(r)).map(Vector).collect()
}

/// The vertex set `conv{(±a,±b,±c,±d), (±e,±f,±g,±h)}` and its partner
/// `conv{(±d,±c,±a,±b), (±h,±g,±e,±f)}` in `R^4`, for positive integer
/// parameters `[a, b, c, d, e, f, g, h]`.
pub fn cube_pair(p: [i64; 8]) -> (VPolytope, VPolytope) {
    let [a, b, c, d, e, f, g, h] = p;
    let plus = block(&[&[pm(a), pm(b), pm(c), pm(d)], &[pm(e), pm(f), pm(g), pm(h)]]);
    let minus = block(&[&[pm(d), pm(c), pm(a), pm(b)], &[pm(h), pm(g), pm(e), pm(f)]]);
    (VPolytope { dim: 4, vertices: plus }, VPolytope { dim: 4, vertices: minus })
}

/// Parameters of the 40-vertex construction.
pub const PARAMS_40: [i64; 8] = [6, 10, 3, 2, 5, 3, 2, 3];
/// Parameters of the `a = e` variant leading to 32 vertices.
pub const PARAMS_32: [i64; 8] = [5, 8, 3, 2, 5, 3, 2, 3];

/// Top base of the 32-vertex prismatoid (right-hand sides normalized to 360).
fn q32_top() -> Vec<Vector> {
    block(&[
        &[pm(72), v(0), v(0), v(0)],
        &[v(0), pm(45), v(0), v(0)],
        &[v(0), v(0), pm(120), v(0)],
        &[v(0), v(0), v(0), pm(120)],
        &[v(0), pm(20), v(0), pm(100)],
        &[v(0), v(0), pm(72), pm(72)],
    ])
}

fn q32_bottom() -> Vec<Vector> {
    block(&[
        &[v(0), v(0), pm(72), v(0)],
        &[v(0), v(0), v(0), pm(45)],
        &[v(0), pm(120), v(0), v(0)],
        &[pm(120), v(0), v(0), v(0)],
        &[pm(100), v(0), v(0), pm(20)],
        &[pm(72), pm(72), v(0), v(0)],
    ])
}

/// Top base of the 28-vertex prismatoid (right-hand sides normalized to 90).
fn q28_top() -> Vec<Vector> {
    block(&[
        &[pm(18), v(0), v(0), v(0)],
        &[v(0), v(0), pm(30), v(0)],
        &[v(0), v(0), v(0), pm(30)],
        &[v(0), pm(5), v(0), pm(25)],
        &[v(0), v(0), pm(18), pm(18)],
    ])
}

fn q28_bottom() -> Vec<Vector> {
    block(&[
        &[v(0), v(0), pm(18), v(0)],
        &[v(0), pm(30), v(0), v(0)],
        &[pm(30), v(0), v(0), v(0)],
        &[pm(25), v(0), v(0), pm(5)],
        &[pm(18), pm(18), v(0), v(0)],
    ])
}

/// Top base of the 25-vertex prismatoid (12 vertices).
fn q20_top() -> Vec<Vector> {
    block(&[
        &[v(0), v(0), pm(20), v(-4)],
        &[v(0), v(0), pm(21), v(-7)],
        &[v(0), v(0), pm(16), v(-15)],
        &[v(0), v(0), v(0), pm(32)],
        &[fr(3, 50), fr(-1, 25), v(0), v(-30)],
        &[fr(-3, 50), fr(-1, 25), v(0), v(30)],
        &[fr(3, 1000), fr(7, 1000), v(0), fr(-318, 10)],
        &[fr(-3, 1000), fr(7, 1000), v(0), fr(318, 10)],
    ])
}

/// Bottom base of the 25-vertex prismatoid (13 vertices).
fn q20_bottom() -> Vec<Vector> {
    block(&[
        &[v(60), v(0), v(0), v(0)],
        &[v(8), v(-30), v(0), v(0)],
        &[v(0), v(-33), v(0), v(0)],
        &[v(-2), v(-32), v(0), v(0)],
        &[v(-55), v(0), v(0), v(0)],
        &[v(-34), v(36), v(0), v(0)],
        &[v(0), v(76), v(0), v(0)],
        &[v(44), v(34), v(0), v(0)],
        &[v(-20), v(0), fr(1, 5), fr(-1, 5)],
        &[fr(2999, 50), v(0), fr(-3, 25), fr(-1, 5)],
        &[fr(299999, 5000), v(0), v(0), fr(1, 100)],
        &[fr(-549, 10), v(0), fr(1, 5000), fr(1, 800)],
        &[v(-54), v(0), fr(1, 500), fr(-1, 80)],
    ])
}

/// The two 4-dimensional bases `(Q⁺, Q⁻)` of a gallery prismatoid.
pub fn gallery_bases(name: &str) -> Result<(VPolytope, VPolytope)> {
    let (top, bottom) = match name {
        "q40" => {
            let (pp, pm_) = cube_pair(PARAMS_40);
            return Ok((polar_dual(&pp)?, polar_dual(&pm_)?));
        }
        "q32" => (q32_top(), q32_bottom()),
        "q28" => (q28_top(), q28_bottom()),
        "q20" => (q20_top(), q20_bottom()),
        other => return Err(Error::UnknownGallery(other.to_string())),
    };
    Ok((VPolytope { dim: 4, vertices: top }, VPolytope { dim: 4, vertices: bottom }))
}

/// `conv(Q⁺×{1} ∪ Q⁻×{−1})` as a point list (top vertices first).
pub fn lift_bases(top: &VPolytope, bottom: &VPolytope) -> Result<VPolytope> {
    if top.dim != bottom.dim {
        return Err(Error::DimensionMismatch(format!("bases of dimension {} and {}", top.dim, bottom.dim)));
    }
    let mut pts: Vec<Vector> = top.vertices.iter().map(|x| x.extended(int(1))).collect();
    pts.extend(bottom.vertices.iter().map(|x| x.extended(int(-1))));
    VPolytope::new(pts)
}

/// The exact vertex matrix of a gallery polytope.
///
/// `q40`, `q32`, `q28` and `q20` are 5-prismatoids whose last coordinate is
/// the base indicator `±1`; `nonhirsch20` is the 20-dimensional polytope
/// whose *first* coordinate is the base indicator.
pub fn gallery(name: &str) -> Result<VPolytope> {
    if name == "nonhirsch20" {
        return Ok(nonhirsch20());
    }
    let (t, b) = gallery_bases(name)?;
    lift_bases(&t, &b)
}

/// The 40 vertices of the 20-dimensional prismatoid of width 21, one row
/// per line; the first coordinate is the base indicator `±1`.
const NONHIRSCH20_ROWS: &str = include_str!("data/nonhirsch20.txt");

/// The 40 vertices of the 20-dimensional prismatoid of width 21.
pub fn nonhirsch20() -> VPolytope {
    let vertices = NONHIRSCH20_ROWS
        .lines()
        .map(|line| Vector(line.split_whitespace().map(|t| parse_rational(t).expect("valid table entry")).collect()))
        .collect();
    VPolytope { dim: 20, vertices }
}
