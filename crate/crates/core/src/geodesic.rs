//! Geodesic maps of 4-polytopes and the combinatorics of pairs of maps.
//!
//! The geodesic map of a 4-polytope `P` with the origin in its interior is
//! its central fan — the cones over its facets — intersected with the unit
//! sphere; it coincides with the normal fan of the polar `Q = P*`.  Given two
//! maps `G⁺`, `G⁻`, the *incidence pattern* records which cells of one map
//! contain vertices of the other in their interior, and the pair is
//! *transversal* when relatively open cells meet in the expected dimension.
//!
//! Also here: the parameter inequalities that make the eight-parameter
//! cube-pair construction wide, the octagon conditions on a pair of bases,
//! and the fattening map that scales one coordinate plane of each base.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exact::{int, nullspace, rank, Rational, Vector};
use crate::hull::{facet_enumeration, FacetList, VPolytope};
use crate::lp::feasible_point;

/// The central fan of a polytope in `R⁴`: one cone per facet, spanned by the
/// facet's vertex rays and cut out by its supporting half-space.
#[derive(Clone, Debug)]
pub struct GeodesicMap {
    pub source: VPolytope,
    pub facets: FacetList,
}

impl GeodesicMap {
    pub fn cone_count(&self) -> usize {
        self.facets.len()
    }

    /// Vertex indices spanning cone `f`.
    pub fn cone_rays(&self, f: usize) -> Vec<usize> {
        self.facets.facets[f].incident.to_vec()
    }
}

/// The central fan of a full-dimensional polytope in `R⁴` containing the
/// origin in its interior.
pub fn central_fan(p: &VPolytope) -> Result<GeodesicMap> {
    if p.dim != 4 {
        return Err(Error::DimensionMismatch(format!("geodesic maps live in R^4, got dimension {}", p.dim)));
    }
    let facets = facet_enumeration(p)?;
    if facets.facets.iter().any(|f| !f.plane.offset.is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    Ok(GeodesicMap { source: p.clone(), facets })
}

/// All cones containing the ray through `w`.
///
/// `w ∈ cone(F)` iff `⟨n_F,w⟩/b_F` is maximal over all facets (and then
/// positive, as the origin is interior); the ray is interior to a cone iff
/// the maximizer is unique.
pub fn locate_ray(g: &GeodesicMap, w: &Vector) -> Result<Vec<usize>> {
    if w.is_zero() {
        return Err(Error::InvalidArgument("zero ray".into()));
    }
    let vals: Vec<Rational> = g.facets.facets.iter().map(|f| f.plane.normal.dot(w) / &f.plane.offset).collect();
    let best = vals.iter().max().expect("at least one facet").clone();
    Ok(vals.iter().enumerate().filter(|(_, v)| **v == best).map(|(i, _)| i).collect())
}

/// A node of an incidence pattern: a facet of `G⁺` or of `G⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Node {
    Plus(usize),
    Minus(usize),
}

impl std::fmt::Display for Node {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Node::Plus(i) => write!(f, "plus:{i}"),
            Node::Minus(j) => write!(f, "minus:{j}"),
        }
    }
}

/// A bipartite digraph: an arrow `C → D` means some vertex of cell `C` lies
/// in the interior of cell `D` of the other map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IncidencePattern {
    pub nodes_plus: Vec<usize>,
    pub nodes_minus: Vec<usize>,
    /// Sorted, duplicate-free.
    pub arrows: Vec<(Node, Node)>,
    /// Vertex rays of either map found on a wall of the other map.
    pub boundary_hits: usize,
}

impl IncidencePattern {
    pub fn out_degree(&self, v: Node) -> usize {
        self.arrows.iter().filter(|(a, _)| *a == v).count()
    }

    pub fn in_degree(&self, v: Node) -> usize {
        self.arrows.iter().filter(|(_, b)| *b == v).count()
    }

    /// Edge-list export, one arrow per line.
    pub fn to_lines(&self) -> String {
        self.arrows.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect()
    }
}

/// The incidence pattern of a pair of maps, from interior hits only.
pub fn incidence_pattern(gp: &GeodesicMap, gm: &GeodesicMap) -> Result<IncidencePattern> {
    let mut arrows = BTreeSet::new();
    let mut boundary_hits = 0;
    for (from, to, wrap_from, wrap_to) in
        [(gp, gm, Node::Plus as fn(usize) -> Node, Node::Minus as fn(usize) -> Node), (gm, gp, Node::Minus, Node::Plus)]
    {
        for (v, w) in from.source.vertices.iter().enumerate() {
            let hit = locate_ray(to, w)?;
            if hit.len() != 1 {
                boundary_hits += 1;
                continue;
            }
            for (c, f) in from.facets.facets.iter().enumerate() {
                if f.incident.contains(v) {
                    arrows.insert((wrap_from(c), wrap_to(hit[0])));
                }
            }
        }
    }
    Ok(IncidencePattern {
        nodes_plus: (0..gp.cone_count()).collect(),
        nodes_minus: (0..gm.cone_count()).collect(),
        arrows: arrows.into_iter().collect(),
        boundary_hits,
    })
}

/// The subgraph induced by the cells that contain some vertex of the other
/// map (nodes with an incoming arrow).
pub fn reduce_pattern(p: &IncidencePattern) -> IncidencePattern {
    let targets: HashSet<Node> = p.arrows.iter().map(|(_, b)| *b).collect();
    let nodes_plus: Vec<usize> = p.nodes_plus.iter().copied().filter(|&i| targets.contains(&Node::Plus(i))).collect();
    let nodes_minus: Vec<usize> = p.nodes_minus.iter().copied().filter(|&j| targets.contains(&Node::Minus(j))).collect();
    let arrows = p.arrows.iter().copied().filter(|(a, b)| targets.contains(a) && targets.contains(b)).collect();
    IncidencePattern { nodes_plus, nodes_minus, arrows, boundary_hits: p.boundary_hits }
}

/// Whether some pair of nodes has arrows in both directions.
pub fn two_cycle_check(p: &IncidencePattern) -> bool {
    let set: HashSet<(Node, Node)> = p.arrows.iter().copied().collect();
    p.arrows.iter().any(|(a, b)| set.contains(&(*b, *a)))
}

/// Whether the pattern is the sixteen-arrow pattern: the plus nodes split
/// into pairs `A`, `C` and the minus nodes into pairs `B`, `D` such that the
/// arrows are exactly `A→B`, `B→C`, `C→D`, `D→A` (all `2×2` combinations).
pub fn is_sixteen_arrow_pattern(p: &IncidencePattern) -> bool {
    if p.nodes_plus.len() != 4 || p.nodes_minus.len() != 4 || p.arrows.len() != 16 {
        return false;
    }
    let arrows: HashSet<(Node, Node)> = p.arrows.iter().copied().collect();
    let pairs = |nodes: &[usize]| -> Vec<([usize; 2], [usize; 2])> {
        let mut out = Vec::new();
        for x in 0..4 {
            for y in (x + 1)..4 {
                let rest: Vec<usize> = (0..4).filter(|&k| k != x && k != y).map(|k| nodes[k]).collect();
                out.push(([nodes[x], nodes[y]], [rest[0], rest[1]]));
            }
        }
        out
    };
    for (a, c) in pairs(&p.nodes_plus) {
        for (b, d) in pairs(&p.nodes_minus) {
            let mut want = HashSet::new();
            for i in 0..2 {
                for j in 0..2 {
                    want.insert((Node::Plus(a[i]), Node::Minus(b[j])));
                    want.insert((Node::Minus(b[i]), Node::Plus(c[j])));
                    want.insert((Node::Plus(c[i]), Node::Minus(d[j])));
                    want.insert((Node::Minus(d[i]), Node::Plus(a[j])));
                }
            }
            if want == arrows {
                return true;
            }
        }
    }
    false
}

/// The inequality system on `(a,…,h)` under which the pair
/// `P⁺ = conv{(±a,±b,±c,±d),(±e,±f,±g,±h)}`,
/// `P⁻ = conv{(±d,±c,±a,±b),(±h,±g,±e,±f)}` has the sixteen-arrow pattern:
///
/// * `a > e`, `b > f`, `c > g`, `d < h`;
/// * `e/c > max{h/a, g/b, f/d}`;
/// * `b/c > max{a/d, c/a, d/b}`;
/// * `b/h > max{d/e, c/f, a/g}`;
/// * `e/h > max{f/g, g/e, h/f}`.
///
/// With `allow_a_eq_e` the first condition is relaxed to `a ≥ e`.
pub fn check_width_inequalities(p: &[Rational; 8], allow_a_eq_e: bool) -> Result<bool> {
    if p.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument("parameters must be positive".into()));
    }
    let [a, b, c, d, e, f, g, h] = p;
    let q = |x: &Rational, y: &Rational| x / y;
    let gt_all = |lhs: Rational, rhs: [Rational; 3]| rhs.iter().all(|r| lhs > *r);
    let first = if allow_a_eq_e { a >= e } else { a > e };
    Ok(first
        && b > f
        && c > g
        && d < h
        && gt_all(q(e, c), [q(h, a), q(g, b), q(f, d)])
        && gt_all(q(b, c), [q(a, d), q(c, a), q(d, b)])
        && gt_all(q(b, h), [q(d, e), q(c, f), q(a, g)])
        && gt_all(q(e, h), [q(f, g), q(g, e), q(h, f)]))
}

/// All nonempty faces of a polytope, as vertex sets, obtained as
/// intersections of facets (the polytope itself excluded).
pub fn proper_faces(fl: &FacetList) -> Vec<BitSet> {
    let mut all: HashSet<BitSet> = HashSet::new();
    let mut frontier: Vec<BitSet> = Vec::new();
    for f in &fl.facets {
        if all.insert(f.incident.clone()) {
            frontier.push(f.incident.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for face in &frontier {
            for f in &fl.facets {
                let x = face.intersection(&f.incident);
                if !x.is_empty() && all.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<BitSet> = all.into_iter().collect();
    out.sort_by_key(|s| (std::cmp::Reverse(s.count()), s.to_vec()));
    out
}

/// Outcome of [`transversality_check`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct TransversalityReport {
    pub transversal: bool,
    /// Cone pairs whose relative interiors were tested for intersection.
    pub pairs_tested: usize,
    /// Pairs of relatively open cones that meet (cells of the common
    /// refinement).
    pub intersecting_pairs: usize,
    /// `(dim C⁺, dim C⁻, dim C⁺∩C⁻)` of offending pairs (first few).
    pub violations: Vec<(usize, usize, usize)>,
}

struct FaceCone {
    rays: Vec<Vector>,
    dim: usize,
    /// Facets (cones of full dimension) containing this face.
    facets: Vec<usize>,
}

fn face_cones(g: &GeodesicMap) -> Vec<FaceCone> {
    proper_faces(&g.facets)
        .into_iter()
        .map(|s| {
            let rays: Vec<Vector> = s.iter().map(|v| g.source.vertices[v].clone()).collect();
            let rows: Vec<Vec<Rational>> = rays.iter().map(|r| r.0.clone()).collect();
            let facets = g.facets.facets.iter().enumerate().filter(|(_, f)| s.is_subset(&f.incident)).map(|(i, _)| i).collect();
            FaceCone { dim: rank(&rows), rays, facets }
        })
        .collect()
}

/// Columns `[V⁺ | −V⁻]` of the homogeneous system `V⁺λ = V⁻μ`.
fn meet_system(p: &[Vector], m: &[Vector]) -> Vec<Vec<Rational>> {
    (0..4)
        .map(|k| p.iter().map(|r| r.0[k].clone()).chain(m.iter().map(|r| -r.0[k].clone())).collect())
        .collect()
}

/// Whether the closed cones meet outside the origin.
fn closed_cones_meet(p: &[Vector], m: &[Vector]) -> bool {
    let mut a = meet_system(p, m);
    let mut b = vec![Rational::zero(); 4];
    // Normalize Σλ = 1: every ray lies in a face not containing the origin,
    // so a nonzero point of the cone has Σλ > 0.
    a.push((0..p.len() + m.len()).map(|i| if i < p.len() { Rational::one() } else { Rational::zero() }).collect());
    b.push(Rational::one());
    feasible_point(&a, &b).is_some()
}

/// Dimension of `relint C⁺ ∩ relint C⁻`, or `None` when they do not meet.
///
/// The relative interiors meet iff `V⁺λ = V⁻μ` has a solution with all
/// coefficients `≥ 1` (cones are scale invariant); the intersection is then
/// the image of an open subset of the solution space, whose dimension is the
/// rank of `V⁺` applied to the `λ`-parts of a kernel basis.
fn relint_meet_dim(p: &[Vector], m: &[Vector]) -> Option<usize> {
    let a = meet_system(p, m);
    let b: Vec<Rational> = a.iter().map(|row| -row.iter().sum::<Rational>()).collect();
    feasible_point(&a, &b)?;
    let kernel = nullspace(&a, p.len() + m.len());
    let images: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|z| (0..4).map(|k| p.iter().zip(&z.0).map(|(r, l)| &r.0[k] * l).sum()).collect())
        .collect();
    Some(if images.is_empty() { 0 } else { rank(&images) })
}

/// Checks that whenever a relatively open cone of `G⁺` meets one of `G⁻`,
/// `dim C⁺ + dim C⁻ = dim(C⁺ ∩ C⁻) + 4` (cone dimensions in `R⁴`, i.e. cell
/// dimensions on `S³` adding up to the intersection dimension plus 3).
///
/// Faces are enumerated from the facet-incidence lattices.  A pair of faces
/// is tested only if every facet containing the first meets every facet
/// containing the second as closed cones, a necessary condition.
pub fn transversality_check(gp: &GeodesicMap, gm: &GeodesicMap) -> TransversalityReport {
    let fp = face_cones(gp);
    let fm = face_cones(gm);
    let facet_rays = |g: &GeodesicMap, f: usize| -> Vec<Vector> { g.cone_rays(f).into_iter().map(|v| g.source.vertices[v].clone()).collect() };
    let meets: Vec<Vec<bool>> = (0..gp.cone_count())
        .map(|i| {
            let ri = facet_rays(gp, i);
            (0..gm.cone_count()).map(|j| closed_cones_meet(&ri, &facet_rays(gm, j))).collect()
        })
        .collect();
    let mut rep = TransversalityReport { transversal: true, ..Default::default() };
    for cp in &fp {
        for cm in &fm {
            if !cp.facets.iter().all(|&i| cm.facets.iter().all(|&j| meets[i][j])) {
                continue;
            }
            rep.pairs_tested += 1;
            if let Some(k) = relint_meet_dim(&cp.rays, &cm.rays) {
                rep.intersecting_pairs += 1;
                if cp.dim + cm.dim != k + 4 {
                    rep.transversal = false;
                    if rep.violations.len() < 20 {
                        rep.violations.push((cp.dim, cm.dim, k));
                    }
                }
            }
        }
    }
    rep
}

/// Indices of the points that are vertices of the convex hull of their
/// projections to the coordinate plane `(i, j)`.
fn projected_hull_vertices(q: &VPolytope, i: usize, j: usize) -> Vec<usize> {
    let pts: Vec<(Rational, Rational)> = q.vertices.iter().map(|v| (v.0[i].clone(), v.0[j].clone())).collect();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    order.dedup_by(|a, b| pts[*a] == pts[*b]);
    let cross = |o: usize, a: usize, b: usize| {
        (&pts[a].0 - &pts[o].0) * (&pts[b].1 - &pts[o].1) - (&pts[a].1 - &pts[o].1) * (&pts[b].0 - &pts[o].0)
    };
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<usize> = if pass == 0 { order.clone() } else { order.iter().rev().copied().collect() };
        for &p in &seq {
            while hull.len() >= start + 2 && !cross(hull[hull.len() - 2], hull[hull.len() - 1], p).is_positive() {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let corners: HashSet<(Rational, Rational)> = hull.iter().map(|&k| pts[k].clone()).collect();
    (0..pts.len()).filter(|&k| corners.contains(&pts[k])).collect()
}

/// The vertices of `Q` mapping to vertices of its projection to the plane
/// `(i, j)`, provided there are exactly eight and all vanish on the two
/// other coordinates.
pub fn octagon_vertices(q: &VPolytope, i: usize, j: usize) -> Option<Vec<usize>> {
    let vs = projected_hull_vertices(q, i, j);
    let ok = vs.len() == 8 && vs.iter().all(|&k| (0..4).all(|c| c == i || c == j || q.vertices[k].0[c].is_zero()));
    ok.then_some(vs)
}

/// The octagon conditions: exactly eight vertices of `Q⁺` project to
/// vertices of its image in the `(x₃,x₄)` plane, all with `x₁ = x₂ = 0`, and
/// symmetrically for `Q⁻` in the `(x₁,x₂)` plane.
pub fn octagon_properties_check(qp: &VPolytope, qm: &VPolytope) -> Result<bool> {
    if qp.dim != 4 || qm.dim != 4 {
        return Err(Error::DimensionMismatch("octagon conditions are stated in R^4".into()));
    }
    Ok(octagon_vertices(qp, 2, 3).is_some() && octagon_vertices(qm, 0, 1).is_some())
}

/// Scales `x₃, x₄` of `Q⁺` and `x₁, x₂` of `Q⁻` by `factor > 1`.
pub fn fatten(qp: &VPolytope, qm: &VPolytope, factor: &Rational) -> Result<(VPolytope, VPolytope)> {
    if *factor <= Rational::one() {
        return Err(Error::InvalidArgument("fattening factor must exceed 1".into()));
    }
    if qp.dim != 4 || qm.dim != 4 {
        return Err(Error::DimensionMismatch("fattening is defined in R^4".into()));
    }
    let scale = |q: &VPolytope, cols: [usize; 2]| VPolytope {
        dim: 4,
        vertices: q
            .vertices
            .iter()
            .map(|v| Vector(v.0.iter().enumerate().map(|(k, x)| if cols.contains(&k) { x * factor } else { x.clone() }).collect()))
            .collect(),
    };
    Ok((scale(qp, [2, 3]), scale(qm, [0, 1])))
}

/// Whether every facet normal of `Q⁺` lies in `D⁻` — the union of the
/// normal cones of `Q⁻` at its eight octagon vertices — and every facet
/// normal of `Q⁻` lies in `D⁺`.
pub fn d_region_check(qp: &VPolytope, qm: &VPolytope) -> Result<bool> {
    let (Some(sp), Some(sm)) = (octagon_vertices(qp, 2, 3), octagon_vertices(qm, 0, 1)) else {
        return Ok(false);
    };
    let covered = |from: &VPolytope, to: &VPolytope, s: &[usize]| -> Result<bool> {
        let fl = facet_enumeration(from)?;
        Ok(fl.facets.iter().all(|f| {
            let vals: Vec<Rational> = to.vertices.iter().map(|v| f.plane.normal.dot(v)).collect();
            let best = vals.iter().max().expect("nonempty").clone();
            s.iter().any(|&k| vals[k] == best)
        }))
    };
    Ok(covered(qp, qm, &sm)? && covered(qm, qp, &sp)?)
}

/// The parameters as exact rationals.
pub fn rational_params(p: [i64; 8]) -> [Rational; 8] {
    p.map(int)
}
