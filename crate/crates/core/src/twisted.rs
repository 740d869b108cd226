//! The twisted product of two polygons: a 4-polytope with vertices on the
//! Clifford torus, and the 5-prismatoid built from two rotated copies of it.
//!
//! Torus points are written `(a, b)` with `a, b ∈ R/mZ`, standing for
//! `f_α(a,b) = (cos α·C(a), sin α·C(b))` where `C(x)` is the point of the
//! unit circle at `x/m` turns.  Lattice coordinates are stored doubled so
//! that the half-integer lattice of the second copy stays integral.
//!
//! Exactness: each distinct circle angle is replaced by one exact rational
//! point (a tangent-half-angle point within `tol` turns), so every vertex
//! lies exactly on `S³` and the points sharing an angle share coordinates
//! exactly.  The resulting combinatorics is checked against the predicted
//! facets rather than assumed.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, rational_circle_point, CirclePoint, Rational, Vector};
use crate::geodesic::{central_fan, locate_ray};
use crate::hull::{facet_enumeration, polar_dual_with, FacetList, VPolytope};
use crate::prismatoid::Prismatoid;

/// Which of the two lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    /// `{(i,j) : i ≡ j (mod q)}`, integer points.
    Plus,
    /// `{(i,j) ∈ (½+Z)² : i − j ≡ q/2 (mod q)}`; needs `q` even.
    Minus,
}

/// A torus point with doubled coordinates `(2a, 2b)`, reduced mod `2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePoint {
    pub a2: i64,
    pub b2: i64,
}

impl LatticePoint {
    /// The point `(a, b)` for integers `a, b`, reduced mod `m`.
    pub fn int(a: i64, b: i64, m: i64) -> Self {
        LatticePoint { a2: (2 * a).rem_euclid(2 * m), b2: (2 * b).rem_euclid(2 * m) }
    }

    fn reduced(a2: i64, b2: i64, m: i64) -> Self {
        LatticePoint { a2: a2.rem_euclid(2 * m), b2: b2.rem_euclid(2 * m) }
    }
}

impl std::fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let h = |x: i64| if x % 2 == 0 { format!("{}", x / 2) } else { format!("{}/2", x) };
        write!(f, "({},{})", h(self.a2), h(self.b2))
    }
}

/// The lattice `W_{d,q}` (or its half-integer partner) in `Z_m²`, `m = dq`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusLattice {
    pub d: usize,
    pub q: usize,
    pub m: usize,
    pub parity: Parity,
    /// Sorted.
    pub points: Vec<LatticePoint>,
}

/// All `m·d` points of the lattice.
pub fn lattice_points(d: usize, q: usize, parity: Parity) -> Result<TorusLattice> {
    if d < 3 || q < 1 {
        return Err(Error::InvalidArgument(format!("need d ≥ 3 and q ≥ 1, got d = {d}, q = {q}")));
    }
    if parity == Parity::Minus && q % 2 == 1 {
        return Err(Error::InvalidArgument("the half-integer lattice needs q even".into()));
    }
    let m = d * q;
    let (mi, qi) = (m as i64, q as i64);
    let mut points = Vec::with_capacity(m * d);
    for i in 0..mi {
        for j in 0..mi {
            let keep = match parity {
                Parity::Plus => (i - j).rem_euclid(qi) == 0,
                Parity::Minus => (i - j).rem_euclid(qi) == qi / 2,
            };
            if keep {
                let shift = (parity == Parity::Minus) as i64;
                points.push(LatticePoint { a2: 2 * i + shift, b2: 2 * j + shift });
            }
        }
    }
    Ok(TorusLattice { d, q, m, parity, points })
}

/// Exact circle points for the angles `x/(2m)` turns, `x` doubled lattice
/// coordinates, each computed once.
fn circle_table(xs: impl IntoIterator<Item = i64>, m: usize, tol: &Rational) -> Result<HashMap<i64, CirclePoint>> {
    let mut out = HashMap::new();
    for x in xs {
        if let std::collections::hash_map::Entry::Vacant(e) = out.entry(x) {
            e.insert(rational_circle_point(&rat(x, 2 * m as i64), tol)?);
        }
    }
    Ok(out)
}

/// `f_α` applied to the lattice, with exact rational circle points.
///
/// `alpha` is `(cos α, sin α)`, both positive.  `tol` must be below a
/// quarter of the lattice spacing `1/(2m)` turns so that distinct angles
/// stay distinct.
pub fn twisted_vertices(l: &TorusLattice, alpha: &CirclePoint, tol: &Rational) -> Result<VPolytope> {
    if !(alpha.c > Rational::zero() && alpha.s > Rational::zero()) || !alpha.is_on_circle() {
        return Err(Error::InvalidArgument("alpha must be a circle point in the open first quadrant".into()));
    }
    if *tol >= rat(1, 8 * l.m as i64) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} cannot separate angles {} turns apart", rat(1, 2 * l.m as i64))));
    }
    let table = circle_table(l.points.iter().flat_map(|p| [p.a2, p.b2]), l.m, tol)?;
    let vertices = l
        .points
        .iter()
        .map(|p| {
            let (ca, cb) = (&table[&p.a2], &table[&p.b2]);
            Vector(vec![&alpha.c * &ca.c, &alpha.c * &ca.s, &alpha.s * &cb.c, &alpha.s * &cb.s])
        })
        .collect();
    Ok(VPolytope { dim: 4, vertices })
}

/// The kind of a facet of the twisted product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FacetKind {
    /// Points with first coordinate `i` or `i+1`.
    Vertical(usize),
    /// Points with second coordinate `j` or `j+1`.
    Horizontal(usize),
    /// The tetrahedron `{(i,j), (i+1,j+1), (i+q−k,j−k), (i+q−k+1,j−k+1)}`.
    Diagonal(usize, usize, usize),
}

/// A predicted facet: its kind and its vertex set (sorted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombFacet {
    pub kind: FacetKind,
    pub vertices: Vec<LatticePoint>,
}

/// The facets of the twisted product `P_{d,q}`: `m` vertical and `m`
/// horizontal antiprisms (prisms for `q = 1`) and `m·d·(q−1)` diagonal
/// tetrahedra — `m(m−d+2)` in total.
pub fn predicted_facets(d: usize, q: usize) -> Result<Vec<CombFacet>> {
    let l = lattice_points(d, q, Parity::Plus)?;
    let m = l.m as i64;
    let mut out = Vec::new();
    for i in 0..m {
        let vertices = l.points.iter().copied().filter(|p| p.a2 == 2 * i || p.a2 == 2 * ((i + 1) % m)).collect();
        out.push(CombFacet { kind: FacetKind::Vertical(i as usize), vertices });
    }
    for j in 0..m {
        let vertices = l.points.iter().copied().filter(|p| p.b2 == 2 * j || p.b2 == 2 * ((j + 1) % m)).collect();
        out.push(CombFacet { kind: FacetKind::Horizontal(j as usize), vertices });
    }
    let qi = q as i64;
    for p in &l.points {
        let (i, j) = (p.a2 / 2, p.b2 / 2);
        for k in 1..qi {
            let mut vertices: Vec<LatticePoint> = [(i, j), (i + 1, j + 1), (i + qi - k, j - k), (i + qi - k + 1, j - k + 1)]
                .iter()
                .map(|&(a, b)| LatticePoint::int(a, b, m))
                .collect();
            vertices.sort();
            out.push(CombFacet { kind: FacetKind::Diagonal(i as usize, j as usize, k as usize), vertices });
        }
    }
    Ok(out)
}

/// Outcome of [`verify_twisted_hull`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct TwistedHullReport {
    pub pass: bool,
    pub d: usize,
    pub q: usize,
    pub computed_facets: usize,
    pub predicted_facets: usize,
    /// Predicted vertex sets that are not facets (first few).
    pub missing: Vec<Vec<String>>,
    /// Computed facets that were not predicted (first few).
    pub unexpected: Vec<Vec<String>>,
}

/// Compares the facets of a hull of lattice images with a prediction, as
/// sets of lattice points.
fn compare_facets(points: &[LatticePoint], fl: &FacetList, predicted: &[BTreeSet<LatticePoint>]) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
    let computed: BTreeSet<BTreeSet<LatticePoint>> = fl.facets.iter().map(|f| f.incident.iter().map(|v| points[v]).collect()).collect();
    let predicted: BTreeSet<BTreeSet<LatticePoint>> = predicted.iter().cloned().collect();
    let show = |s: &BTreeSet<LatticePoint>| s.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let missing = predicted.difference(&computed).take(10).map(show).collect();
    let unexpected = computed.difference(&predicted).take(10).map(show).collect();
    (missing, unexpected)
}

/// Exact hull of `f_α(W_{d,q})`, compared with [`predicted_facets`].
pub fn verify_twisted_hull(d: usize, q: usize, alpha: &CirclePoint, tol: &Rational) -> Result<TwistedHullReport> {
    let l = lattice_points(d, q, Parity::Plus)?;
    let fl = facet_enumeration(&twisted_vertices(&l, alpha, tol)?)?;
    let predicted: Vec<BTreeSet<LatticePoint>> = predicted_facets(d, q)?.into_iter().map(|f| f.vertices.into_iter().collect()).collect();
    let (missing, unexpected) = compare_facets(&l.points, &fl, &predicted);
    Ok(TwistedHullReport {
        pass: missing.is_empty() && unexpected.is_empty() && fl.len() == predicted.len(),
        d,
        q,
        computed_facets: fl.len(),
        predicted_facets: predicted.len(),
        missing,
        unexpected,
    })
}

/// The predicted facets of the hull of the half-integer lattice image
/// `f_β(W⁻)`, with `β = π/2 − α`.
///
/// Swapping the two coordinate planes of `R⁴` maps `f_β(a,b)` to
/// `f_α(b,a)`, and `(b,a) ↦ (b − ½, a − ½ + q/2)` maps the swapped lattice
/// onto `W_{d,q}`; the facets are the images of the twisted-product facets.
pub fn predicted_minus_facets(d: usize, q: usize) -> Result<Vec<BTreeSet<LatticePoint>>> {
    let m = (d * q) as i64;
    let qi = q as i64;
    Ok(predicted_facets(d, q)?
        .into_iter()
        .map(|f| {
            f.vertices
                .iter()
                // Doubled form of (a, b) ↦ (b + ½ − q/2, a + ½).
                .map(|p| LatticePoint::reduced(p.b2 + 1 - qi, p.a2 + 1, m))
                .collect()
        })
        .collect())
}

/// Default tolerance (in turns) for the circle points of the twisted
/// constructions.
pub fn default_tol() -> Rational {
    rat(1, 1_000_000_000)
}

/// The default `α` for a single copy: `1/8` turn, i.e. the standard torus.
pub fn default_alpha() -> CirclePoint {
    rational_circle_point(&rat(1, 8), &rat(1, 1_000_000)).expect("valid angle")
}

/// The default small angle for two copies: about `1/100` turn.
pub fn default_alpha_small() -> CirclePoint {
    rational_circle_point(&rat(1, 100), &rat(1, 10_000)).expect("valid angle")
}

/// The two-copies prismatoid together with what was checked on the way.
#[derive(Clone, Debug)]
pub struct TwoCopies {
    pub prismatoid: Prismatoid,
    pub alpha: CirclePoint,
    /// Lattice point of each vertex of `V⁺` and `V⁻`.
    pub plus_points: Vec<LatticePoint>,
    pub minus_points: Vec<LatticePoint>,
    /// Facets of `conv V⁺` and `conv V⁻`; vertex `k` of `Q⁺` (`Q⁻`) is the
    /// polar of facet `k`.
    pub plus_facets: FacetList,
    pub minus_facets: FacetList,
    pub attempts: usize,
}

/// `V⁺ = f_α(W⁺)`, `V⁻ = f_β(W⁻)`, `Q± = (conv V±)*` and the prismatoid
/// `conv(Q⁺×{1} ∪ Q⁻×{−1})`.
///
/// Both hulls are checked against the predicted facets, and the copies must
/// sit as expected for a small angle: every vertex of `V⁺` lies in the
/// interior of a cone over a facet of `conv V⁻` whose points take only two
/// consecutive first coordinates, and every vertex of `V⁻` in the interior
/// of a cone over a facet of `conv V⁺` with two consecutive second
/// coordinates.  On failure `α` is halved, at most `max_attempts` times.
pub fn two_copies_prismatoid(d: usize, q: usize, alpha_small: &CirclePoint, tol: &Rational, max_attempts: usize) -> Result<TwoCopies> {
    if q % 2 == 1 {
        return Err(Error::InvalidArgument("two copies need q even".into()));
    }
    let lp = lattice_points(d, q, Parity::Plus)?;
    let lm = lattice_points(d, q, Parity::Minus)?;
    let pred_plus: Vec<BTreeSet<LatticePoint>> = predicted_facets(d, q)?.into_iter().map(|f| f.vertices.into_iter().collect()).collect();
    let pred_minus = predicted_minus_facets(d, q)?;
    let mut alpha = alpha_small.clone();
    for attempt in 1..=max_attempts.max(1) {
        let vp = twisted_vertices(&lp, &alpha, tol)?;
        let vm = twisted_vertices(&lm, &alpha.swapped(), tol)?;
        let fp = facet_enumeration(&vp)?;
        let fm = facet_enumeration(&vm)?;
        let hulls_ok = {
            let (a, b) = compare_facets(&lp.points, &fp, &pred_plus);
            let (c, e) = compare_facets(&lm.points, &fm, &pred_minus);
            a.is_empty() && b.is_empty() && c.is_empty() && e.is_empty()
        };
        if hulls_ok && nested(&lp.points, &vp, &lm.points, &vm)? {
            let qp = polar_dual_with(&fp)?;
            let qm = polar_dual_with(&fm)?;
            let prismatoid = Prismatoid::assemble(&qp, &qm)?;
            return Ok(TwoCopies {
                prismatoid,
                alpha,
                plus_points: lp.points,
                minus_points: lm.points,
                plus_facets: fp,
                minus_facets: fm,
                attempts: attempt,
            });
        }
        alpha = halve(&alpha, tol)?;
    }
    Err(Error::RetriesExhausted(format!("no admissible alpha for d = {d}, q = {q} after {max_attempts} attempts")))
}

/// The circle point at half the angle (within `tol`).
fn halve(alpha: &CirclePoint, tol: &Rational) -> Result<CirclePoint> {
    let turns = alpha.turns_f64() / 2.0;
    let approx = Rational::from_float(turns).ok_or_else(|| Error::InvalidArgument("angle".into()))?;
    rational_circle_point(&approx, tol)
}

/// The containment conditions of [`two_copies_prismatoid`].
fn nested(pp: &[LatticePoint], vp: &VPolytope, pm: &[LatticePoint], vm: &VPolytope) -> Result<bool> {
    let gp = central_fan(vp)?;
    let gm = central_fan(vm)?;
    let two_values = |fl: &FacetList, pts: &[LatticePoint], first: bool, f: usize| {
        let vals: BTreeSet<i64> = fl.facets[f].incident.iter().map(|v| if first { pts[v].a2 } else { pts[v].b2 }).collect();
        vals.len() == 2
    };
    for v in &vp.vertices {
        let hit = locate_ray(&gm, v)?;
        if hit.len() != 1 || !two_values(&gm.facets, pm, true, hit[0]) {
            return Ok(false);
        }
    }
    for v in &vm.vertices {
        let hit = locate_ray(&gp, v)?;
        if hit.len() != 1 || !two_values(&gp.facets, pp, false, hit[0]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Facet counts of the predicted complex by kind (diagnostics).
pub fn facet_kind_counts(facets: &[CombFacet]) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for f in facets {
        let k = match f.kind {
            FacetKind::Vertical(_) => "vertical",
            FacetKind::Horizontal(_) => "horizontal",
            FacetKind::Diagonal(..) => "diagonal",
        };
        *out.entry(k).or_insert(0) += 1;
    }
    out
}
