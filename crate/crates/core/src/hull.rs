//! Exact facet enumeration of full-dimensional polytopes given by points,
//! polar duality and an independent facet-list validator.
//!
//! # Algorithm
//!
//! Facets are computed by the beneath–beyond method, building a *placing
//! triangulation* of the boundary: points are inserted in input order, and
//! each insertion replaces the simplices visible from the new point by cones
//! from the point over the horizon ridges.  Coplanar simplices are kept
//! separate during the construction and merged at the end by grouping them
//! on their exact, normalized supporting hyperplane, which yields the true
//! (possibly non-simplicial) facets.
//!
//! All arithmetic is on integers: each coordinate column is first scaled by
//! the lcm of its denominators (an invertible diagonal map, which does not
//! change the combinatorics), hyperplanes are kept primitive, and the
//! hyperplane of a new simplex is obtained from the two hyperplanes meeting
//! at its horizon ridge without solving any linear system:
//! `e_new = e_n(p)·e_v − e_v(p)·e_n`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exact::{integer_kernel_vector, make_primitive, rank, Hyperplane, Rational, Vector};

/// A polytope given by its points (the vertices, when the input is in
/// convex position).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<Vector>,
}

impl VPolytope {
    /// Wraps a point list, checking that all points have the same dimension.
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        let dim = vertices.first().map(|v| v.dim()).ok_or_else(|| Error::InvalidArgument("empty point list".into()))?;
        if let Some(bad) = vertices.iter().position(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch(format!("point {bad} has dimension {} instead of {dim}", vertices[bad].dim())));
        }
        Ok(VPolytope { dim, vertices })
    }

    /// Builds a polytope from integer coordinates.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| Vector::from_ints(r)).collect())
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }
}

/// A facet: its supporting half-space and the set of points on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub plane: Hyperplane,
    pub incident: BitSet,
}

/// The complete facet description of a full-dimensional polytope.
#[derive(Clone, Debug)]
pub struct FacetList {
    pub source: VPolytope,
    pub facets: Vec<Facet>,
    pub polytope_dim: usize,
}

impl FacetList {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Indices of the points that lie on at least one facet (the vertices,
    /// when the input has no interior or non-extreme boundary points).
    pub fn incidence_sets(&self) -> Vec<&BitSet> {
        self.facets.iter().map(|f| &f.incident).collect()
    }
}

/// Dimension of the affine hull of the points.
pub fn affine_dimension(p: &VPolytope) -> usize {
    if p.vertices.len() <= 1 {
        return 0;
    }
    let base = &p.vertices[0];
    let rows: Vec<Vec<Rational>> = p.vertices[1..].iter().map(|v| v.sub(base).0).collect();
    rank(&rows)
}

/// Integer points obtained by scaling each coordinate column by the lcm of
/// its denominators; also returns the scale factors.
fn integer_points(p: &VPolytope) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let d = p.dim;
    let mut scales = vec![BigInt::one(); d];
    for v in &p.vertices {
        for (j, x) in v.0.iter().enumerate() {
            if !x.denom().is_one() {
                scales[j] = scales[j].lcm(x.denom());
            }
        }
    }
    let pts = p
        .vertices
        .iter()
        .map(|v| v.0.iter().enumerate().map(|(j, x)| x.numer() * (&scales[j] / x.denom())).collect())
        .collect();
    (pts, scales)
}

/// Evaluates `b − a·x`.
#[inline]
fn eval(a: &[BigInt], b: &BigInt, x: &[BigInt]) -> BigInt {
    let mut s = b.clone();
    for (ai, xi) in a.iter().zip(x) {
        if !ai.is_zero() && !xi.is_zero() {
            s -= ai * xi;
        }
    }
    s
}

struct Simplex {
    /// Sorted point indices.
    verts: Vec<u32>,
    /// `neighbors[i]` is the simplex across the ridge opposite `verts[i]`.
    neighbors: Vec<u32>,
    a: Vec<BigInt>,
    b: BigInt,
    alive: bool,
    /// Unprocessed points assigned to this simplex (each sees it).
    conflicts: Vec<u32>,
}

/// Greedy choice of `d+1` affinely independent points (first ones in input
/// order); `None` if the points do not span `R^d`.
fn initial_simplex(pts: &[Vec<BigInt>], d: usize) -> Option<Vec<usize>> {
    let mut chosen = vec![0usize];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 1..pts.len() {
        if chosen.len() == d + 1 {
            break;
        }
        let diff: Vec<BigInt> = pts[i].iter().zip(&pts[chosen[0]]).map(|(x, y)| x - y).collect();
        let mut trial = rows.clone();
        trial.push(diff.clone());
        if crate::exact::integer_rank(trial) == rows.len() + 1 {
            rows.push(diff);
            chosen.push(i);
        }
    }
    (chosen.len() == d + 1).then_some(chosen)
}

/// Hyperplane `b − a·x = 0` through `d` affinely independent integer points,
/// oriented so that `inside` evaluates positive.
fn plane_through(pts: &[Vec<BigInt>], verts: &[u32], inside: &[BigInt], d: usize) -> (Vec<BigInt>, BigInt) {
    let p0 = &pts[verts[0] as usize];
    let rows: Vec<Vec<BigInt>> =
        verts[1..].iter().map(|&v| pts[v as usize].iter().zip(p0).map(|(x, y)| x - y).collect()).collect();
    let mut a = integer_kernel_vector(rows, d).expect("simplex vertices affinely independent");
    let mut b: BigInt = a.iter().zip(p0).map(|(x, y)| x * y).sum();
    if eval(&a, &b, inside).is_negative() {
        a.iter_mut().for_each(|x| *x = -&*x);
        b = -b;
    }
    (a, b)
}

/// Enumerates all facets of a full-dimensional polytope given by points.
///
/// Points need not be in convex position: non-extreme points appear in the
/// incidence set of every facet whose hyperplane contains them and are
/// otherwise ignored.
pub fn facet_enumeration(p: &VPolytope) -> Result<FacetList> {
    let d = p.dim;
    let n = p.n();
    if d == 0 {
        return Err(Error::Degenerate("zero-dimensional ambient space".into()));
    }
    {
        let mut seen = HashSet::new();
        for (i, v) in p.vertices.iter().enumerate() {
            if !seen.insert(v) {
                return Err(Error::Degenerate(format!("duplicate point {i}")));
            }
        }
    }
    let (pts, scales) = integer_points(p);
    let init = initial_simplex(&pts, d).ok_or_else(|| {
        Error::Degenerate(format!("points span an affine space of dimension {} < {d}", affine_dimension(p)))
    })?;

    let mut simplices: Vec<Simplex> = Vec::new();
    // Initial simplex: facet k omits init[k].
    let mut sorted_init: Vec<u32> = init.iter().map(|&i| i as u32).collect();
    sorted_init.sort_unstable();
    for k in 0..=d {
        let omitted = sorted_init[k];
        let verts: Vec<u32> = sorted_init.iter().copied().filter(|&v| v != omitted).collect();
        let (a, b) = plane_through(&pts, &verts, &pts[omitted as usize], d);
        // Neighbor across the ridge opposite verts[i] omits verts[i] instead.
        let neighbors = verts.iter().map(|v| sorted_init.iter().position(|w| w == v).unwrap() as u32).collect();
        simplices.push(Simplex { verts, neighbors, a, b, alive: true, conflicts: Vec::new() });
    }

    let in_init: HashSet<usize> = init.iter().copied().collect();
    let mut dropped: Vec<usize> = Vec::new();
    for q in 0..n {
        if in_init.contains(&q) {
            continue;
        }
        match simplices.iter().position(|s| eval(&s.a, &s.b, &pts[q]).is_negative()) {
            Some(s) => simplices[s].conflicts.push(q as u32),
            None => dropped.push(q),
        }
    }

    // Insert points in index order, always taking the assigned witness.
    let mut pending: Vec<Option<u32>> = vec![None; n];
    for (si, s) in simplices.iter().enumerate() {
        for &q in &s.conflicts {
            pending[q as usize] = Some(si as u32);
        }
    }
    let mut eval_cache: HashMap<u32, BigInt> = HashMap::new();
    for p_idx in 0..n {
        let Some(w) = pending[p_idx] else { continue };
        pending[p_idx] = None;
        let pp = &pts[p_idx];
        debug_assert!(simplices[w as usize].alive);

        // Collect the visible region by BFS.
        eval_cache.clear();
        let mut visible: Vec<u32> = vec![w];
        let ew = eval(&simplices[w as usize].a, &simplices[w as usize].b, pp);
        eval_cache.insert(w, ew);
        let mut head = 0;
        while head < visible.len() {
            let s = visible[head];
            head += 1;
            for k in 0..d {
                let nb = simplices[s as usize].neighbors[k];
                if eval_cache.contains_key(&nb) {
                    continue;
                }
                let e = eval(&simplices[nb as usize].a, &simplices[nb as usize].b, pp);
                let vis = e.is_negative();
                eval_cache.insert(nb, e);
                if vis {
                    visible.push(nb);
                }
            }
        }

        // Build the cone over the horizon.
        let first_new = simplices.len() as u32;
        let mut ridge_map: HashMap<Vec<u32>, (u32, usize)> = HashMap::new();
        let mut orphans: Vec<u32> = Vec::new();
        for &v in &visible {
            for k in 0..d {
                let nb = simplices[v as usize].neighbors[k];
                let en = &eval_cache[&nb];
                if en.is_negative() {
                    continue;
                }
                let ev = &eval_cache[&v];
                let sv = &simplices[v as usize];
                let snb = &simplices[nb as usize];
                // e_new = e_n(p)·e_v − e_v(p)·e_n
                let mut a: Vec<BigInt> = sv.a.iter().zip(&snb.a).map(|(av, an)| en * av - ev * an).collect();
                let b0 = en * &sv.b - ev * &snb.b;
                a.push(b0);
                let mut a = make_primitive(a);
                let b = a.pop().unwrap();

                let mut verts: Vec<u32> = sv.verts.iter().copied().filter(|&x| x != sv.verts[k]).collect();
                let pos = verts.partition_point(|&x| x < p_idx as u32);
                verts.insert(pos, p_idx as u32);
                let new_id = simplices.len() as u32;
                let mut neighbors = vec![u32::MAX; d];
                neighbors[pos] = nb;
                // Re-point the outside neighbor to the new simplex.
                let slot = simplices[nb as usize].neighbors.iter().position(|&x| x == v).expect("symmetric adjacency");
                simplices[nb as usize].neighbors[slot] = new_id;
                // Match ridges through p with other new simplices.
                for (i, &x) in verts.iter().enumerate() {
                    if i == pos {
                        continue;
                    }
                    let key: Vec<u32> = verts.iter().copied().filter(|&y| y != x).collect();
                    if let Some((other, oslot)) = ridge_map.remove(&key) {
                        neighbors[i] = other;
                        simplices[other as usize].neighbors[oslot] = new_id;
                    } else {
                        ridge_map.insert(key, (new_id, i));
                    }
                }
                simplices.push(Simplex { verts, neighbors, a, b, alive: true, conflicts: Vec::new() });
            }
        }
        debug_assert!(ridge_map.is_empty(), "unmatched ridges in cone over horizon");

        // Retire visible simplices and reassign their conflicts.
        for &v in &visible {
            let s = &mut simplices[v as usize];
            s.alive = false;
            orphans.append(&mut s.conflicts);
            // No live simplex points at a retired one; release its storage.
            s.a = Vec::new();
            s.verts = Vec::new();
            s.neighbors = Vec::new();
        }
        let end_new = simplices.len() as u32;
        for q in orphans {
            if q as usize == p_idx {
                continue;
            }
            let qp = &pts[q as usize];
            let hit = (first_new..end_new).find(|&s| eval(&simplices[s as usize].a, &simplices[s as usize].b, qp).is_negative());
            match hit {
                Some(s) => {
                    simplices[s as usize].conflicts.push(q);
                    pending[q as usize] = Some(s);
                }
                None => {
                    pending[q as usize] = None;
                    dropped.push(q as usize);
                }
            }
        }
    }

    // Merge coplanar simplices into facets.
    let mut groups: HashMap<(Vec<BigInt>, BigInt), usize> = HashMap::new();
    let mut planes: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    let mut incid: Vec<BitSet> = Vec::new();
    for s in simplices.iter().filter(|s| s.alive) {
        let key = (s.a.clone(), s.b.clone());
        let idx = *groups.entry(key.clone()).or_insert_with(|| {
            planes.push(key);
            incid.push(BitSet::new(n));
            planes.len() - 1
        });
        for &v in &s.verts {
            incid[idx].insert(v as usize);
        }
    }
    for &q in &dropped {
        for (f, (a, b)) in planes.iter().enumerate() {
            if eval(a, b, &pts[q]).is_zero() {
                incid[f].insert(q);
            }
        }
    }

    let mut facets: Vec<Facet> = planes
        .into_iter()
        .zip(incid)
        .map(|((a, b), inc)| {
            // Undo the column scaling: a'·(D x) ≤ b  ⇔  (D a')·x ≤ b.
            let mut row: Vec<BigInt> = a.iter().zip(&scales).map(|(x, s)| x * s).collect();
            row.push(b);
            let mut row = make_primitive(row);
            let off = row.pop().unwrap();
            Facet {
                plane: Hyperplane {
                    normal: Vector(row.into_iter().map(Rational::from_integer).collect()),
                    offset: Rational::from_integer(off),
                },
                incident: inc,
            }
        })
        .collect();
    facets.sort_by_key(|x| x.incident.to_vec());
    Ok(FacetList { source: p.clone(), facets, polytope_dim: d })
}

/// A point strictly inside a full-dimensional polytope: the centroid of its
/// points, verified against the facets.
pub fn interior_point(p: &VPolytope) -> Result<Vector> {
    let fl = facet_enumeration(p)?;
    interior_point_with(&fl)
}

/// [`interior_point`] for an already enumerated facet list.
pub fn interior_point_with(fl: &FacetList) -> Result<Vector> {
    let p = &fl.source;
    let n = Rational::from_integer(BigInt::from(p.n()));
    let mut c = Vector::zeros(p.dim);
    for v in &p.vertices {
        c = c.add(v);
    }
    let c = c.scale(&(Rational::one() / n));
    if fl.facets.iter().all(|f| f.plane.slack(&c).is_positive()) {
        Ok(c)
    } else {
        Err(Error::Degenerate("centroid is not strictly interior".into()))
    }
}

/// The polar `{y : ⟨y,x⟩ ≤ 1 ∀x ∈ P}`; vertex `i` of the result is facet `i`
/// of `P` scaled to offset 1.
pub fn polar_dual(p: &VPolytope) -> Result<VPolytope> {
    let fl = facet_enumeration(p)?;
    polar_dual_with(&fl)
}

/// [`polar_dual`] for an already enumerated facet list.
pub fn polar_dual_with(fl: &FacetList) -> Result<VPolytope> {
    if fl.facets.iter().any(|f| !f.plane.offset.is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    VPolytope::new(fl.facets.iter().map(|f| f.plane.normal.scale(&(Rational::one() / &f.plane.offset))).collect())
}

/// Outcome of [`validate_facets`].
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub pass: bool,
    /// Human-readable witnesses of each failure.
    pub failures: Vec<String>,
    /// Number of distinct ridges found.
    pub ridges: usize,
    /// Ridge-derived adjacency: `adjacency[i]` lists the facets sharing a
    /// ridge with facet `i`, sorted.
    pub adjacency: Vec<Vec<usize>>,
}

/// Ridges of a facet computed intrinsically, as vertex sets: all
/// `(dim−1)`-subsets for a simplex, otherwise the facets of the facet's
/// point set in its own hyperplane.
pub fn facet_ridges(fl: &FacetList, f: usize) -> Result<Vec<BitSet>> {
    let facet = &fl.facets[f];
    let d = fl.polytope_dim;
    let n = fl.source.n();
    let members = facet.incident.to_vec();
    if members.len() == d {
        return Ok((0..d).map(|skip| BitSet::from_indices(n, members.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v))).collect());
    }
    if d == 1 {
        return Ok(vec![BitSet::new(n)]);
    }
    // Drop a coordinate on which the normal is nonzero: an affine bijection
    // from the facet hyperplane onto R^{d-1}.
    let c = facet.plane.normal.0.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    let projected: Vec<Vector> = members
        .iter()
        .map(|&v| Vector(fl.source.vertices[v].0.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()))
        .collect();
    let sub = facet_enumeration(&VPolytope::new(projected)?)?;
    Ok(sub.facets.iter().map(|sf| BitSet::from_indices(n, sf.incident.iter().map(|k| members[k]))).collect())
}

/// Independent certificate for a facet list: every point satisfies every
/// inequality, incidence sets are exactly the equality sets, facets are
/// distinct and affinely spanning, and every ridge (computed intrinsically
/// from each facet) lies in exactly two facets.
pub fn validate_facets(fl: &FacetList) -> ValidationReport {
    let mut rep = ValidationReport { pass: true, ..Default::default() };
    let d = fl.polytope_dim;
    let n = fl.source.n();
    let fail = |rep: &mut ValidationReport, msg: String| {
        rep.pass = false;
        if rep.failures.len() < 50 {
            rep.failures.push(msg);
        }
    };
    let mut seen: HashMap<&BitSet, usize> = HashMap::new();
    for (fi, f) in fl.facets.iter().enumerate() {
        if f.plane.normal.is_zero() {
            fail(&mut rep, format!("facet {fi}: zero normal"));
            continue;
        }
        for (vi, v) in fl.source.vertices.iter().enumerate() {
            let s = f.plane.slack(v);
            if s.is_negative() {
                fail(&mut rep, format!("facet {fi}: point {vi} violates the inequality"));
            }
            if s.is_zero() != f.incident.contains(vi) {
                fail(&mut rep, format!("facet {fi}: incidence of point {vi} is wrong"));
            }
        }
        if f.incident.count() < d {
            fail(&mut rep, format!("facet {fi}: only {} incident points", f.incident.count()));
        } else {
            let pts: Vec<Vector> = f.incident.iter().map(|v| fl.source.vertices[v].clone()).collect();
            if affine_dimension(&VPolytope { dim: d, vertices: pts }) != d - 1 {
                fail(&mut rep, format!("facet {fi}: incident points do not span a hyperplane"));
            }
        }
        if let Some(prev) = seen.insert(&f.incident, fi) {
            fail(&mut rep, format!("facets {prev} and {fi} have the same incidence set"));
        }
    }
    if !rep.pass {
        return rep;
    }
    let mut ridge_owners: HashMap<BitSet, Vec<usize>> = HashMap::new();
    for fi in 0..fl.facets.len() {
        match facet_ridges(fl, fi) {
            Ok(rs) => {
                for r in rs {
                    ridge_owners.entry(r).or_default().push(fi);
                }
            }
            Err(e) => fail(&mut rep, format!("facet {fi}: ridge computation failed: {e}")),
        }
    }
    rep.ridges = ridge_owners.len();
    rep.adjacency = vec![Vec::new(); fl.facets.len()];
    let mut owners: Vec<(&BitSet, &Vec<usize>)> = ridge_owners.iter().collect();
    owners.sort_by_key(|(r, _)| r.to_vec());
    for (r, own) in owners {
        if own.len() != 2 {
            fail(&mut rep, format!("ridge {:?} lies in {} facet(s) {:?}", r.to_vec(), own.len(), own));
        } else {
            rep.adjacency[own[0]].push(own[1]);
            rep.adjacency[own[1]].push(own[0]);
        }
    }
    for a in rep.adjacency.iter_mut() {
        a.sort_unstable();
        a.dedup();
    }
    let _ = n;
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(d: usize) -> VPolytope {
        let rows: Vec<Vec<i64>> = (0..1usize << d).map(|m| (0..d).map(|j| if m >> j & 1 == 1 { 1 } else { -1 }).collect()).collect();
        VPolytope::from_int_rows(&rows).unwrap()
    }

    #[test]
    fn cube_facets() {
        for d in 1..=4 {
            let fl = facet_enumeration(&cube(d)).unwrap();
            assert_eq!(fl.len(), 2 * d);
            assert!(fl.facets.iter().all(|f| f.incident.count() == 1 << (d - 1)));
            let rep = validate_facets(&fl);
            assert!(rep.pass, "{:?}", rep.failures);
        }
    }
}
