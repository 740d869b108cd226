//! The combinatorial common refinement of the two geodesic maps of the
//! two-copies prismatoid, and the distance labelling that certifies its
//! width.
//!
//! Everything here is built from the lattice description alone; no
//! geometry is involved.  Coordinates are doubled and *unwrapped*
//! (representatives in `Z²` rather than `Z_{2m}²`), so that an edge of a
//! map is a pair of concrete points and its crossings with the lines
//! `a = const` / `b = const` can be counted directly.
//!
//! * `G⁺` has vertices `W⁺` and, from every vertex, edges with
//!   displacements `(1,1)` ("short", within a helix) and `(q−k, −k)` for
//!   `k = 0, …, q` (`k = 0` horizontal, `k = q` vertical).
//! * `G⁻` is the image of `G⁺` under `(a,b) ↦ (b + ½ − q/2, a + ½)`, which
//!   maps `W⁺` onto `W⁻` and exchanges vertical and horizontal.
//! * For a small angle the vertical polygons of `G⁻` sit on the lines
//!   `a ∈ ½ + Z` and the horizontal polygons of `G⁺` on `b ∈ Z`; these are
//!   the only cells that cut edges and triangles of the other map.
//!
//! Crossing index formula: a non-vertical edge of `G⁺` crosses the lines
//! `a = c`, `c ∈ ½ + Z`, strictly inside its `a`-span.  Numbering these
//! crossings `t = 1, …, s` from the end with smaller `a`, the crossing gets
//! label `min(t, s+1−t)` (walking in from the nearer end point), except that
//! the single crossing of a short edge gets `1`.  Symmetrically a
//! non-horizontal edge of `G⁻` crossing the lines `b ∈ Z` gets
//! `2 + q/2 − min(t, s+1−t)`, and the crossing of a short edge gets
//! `2 + q/2`.  Vertices of `V⁺` have label `0`, of `V⁻` label `2 + q/2`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{CirclePoint, Rational};
use crate::prismatoid::width;
use crate::twisted::{lattice_points, two_copies_prismatoid, LatticePoint, Parity};

/// A point with doubled, unwrapped coordinates.
type Pt = (i64, i64);

/// Which map an edge or triangle belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapSide {
    Plus,
    Minus,
}

/// A node of the refinement graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RefNode {
    /// A vertex of `V⁺`.
    Plus(LatticePoint),
    /// A vertex of `V⁻`.
    Minus(LatticePoint),
    /// The crossing of an edge of one map with a polygon of the other.
    /// `from`/`to` are the edge's end points and `line` the doubled
    /// coordinate of the crossed line (`a` for `Plus`, `b` for `Minus`),
    /// all reduced mod `2m`.
    Crossing { side: MapSide, from: LatticePoint, to: LatticePoint, line: i64, short: bool },
}

/// The refinement graph `H` with its labelling `d`.
///
/// Only the edges of `H` itself are stored.  The augmented graph `H̃` adds
/// an edge between *every* pair of nodes whose labels differ by one; those
/// edges are implicit (see [`RefinementGraph::tilde_neighbors`]).
#[derive(Clone, Debug, Serialize)]
pub struct RefinementGraph {
    pub d: usize,
    pub q: usize,
    pub nodes: Vec<RefNode>,
    pub labels: Vec<usize>,
    /// Edges of `H`, each as `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

impl RefinementGraph {
    /// `2 + q/2`, the label of `V⁻`.
    pub fn top_label(&self) -> usize {
        2 + self.q / 2
    }

    pub fn is_plus_vertex(&self, v: usize) -> bool {
        matches!(self.nodes[v], RefNode::Plus(_))
    }

    pub fn is_minus_vertex(&self, v: usize) -> bool {
        matches!(self.nodes[v], RefNode::Minus(_))
    }

    /// Neighbours of `v` in `H`.
    pub fn h_neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Neighbours of `v` in `H̃`: those in `H` plus every node whose label
    /// differs from `v`'s by exactly one.
    pub fn tilde_neighbors(&self, v: usize) -> Vec<usize> {
        let l = self.labels[v];
        let mut out: BTreeSet<usize> = self.adjacency[v].iter().copied().collect();
        out.extend((0..self.nodes.len()).filter(|&w| self.labels[w] + 1 == l || self.labels[w] == l + 1));
        out.into_iter().collect()
    }

    /// Number of augmentation edges of `H̃` that are not already in `H`.
    pub fn augmentation_edge_count(&self) -> usize {
        let mut classes = vec![0usize; self.labels.iter().max().map_or(0, |m| m + 1)];
        for &l in &self.labels {
            classes[l] += 1;
        }
        let all: usize = classes.windows(2).map(|w| w[0] * w[1]).sum();
        let in_h = self.edges.iter().filter(|&&(u, v)| self.labels[u].abs_diff(self.labels[v]) == 1).count();
        all - in_h
    }

    /// Multi-source BFS distances from `V⁺`, in `H` (`tilde = false`) or in
    /// `H̃`.  Unreachable nodes get `usize::MAX`.
    pub fn distances_from_plus(&self, tilde: bool) -> Vec<usize> {
        let n = self.nodes.len();
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if self.is_plus_vertex(v) {
                dist[v] = 0;
                queue.push_back(v);
            }
        }
        // Label classes, expanded at most once each in H̃.
        let top = self.labels.iter().max().map_or(0, |m| m + 1);
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); top];
        for (v, &l) in self.labels.iter().enumerate() {
            classes[l].push(v);
        }
        let mut expanded = vec![false; top];
        while let Some(v) = queue.pop_front() {
            let next = dist[v] + 1;
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
            if tilde {
                let l = self.labels[v];
                for c in [l.checked_sub(1), Some(l + 1)].into_iter().flatten() {
                    if c < top && !expanded[c] {
                        expanded[c] = true;
                        for &w in &classes[c] {
                            if dist[w] == usize::MAX {
                                dist[w] = next;
                                queue.push_back(w);
                            }
                        }
                    }
                }
            }
        }
        dist
    }

    /// `min dist(V⁺, V⁻)` in `H` or `H̃`.
    pub fn plus_minus_distance(&self, tilde: bool) -> Option<usize> {
        let dist = self.distances_from_plus(tilde);
        (0..self.nodes.len()).filter(|&v| self.is_minus_vertex(v)).map(|v| dist[v]).filter(|&x| x != usize::MAX).min()
    }
}

/// Translation-invariant key of an edge: lexicographically smaller end
/// point reduced mod `2m`, plus the displacement to the other end.
fn edge_key(u: Pt, v: Pt, m2: i64) -> (Pt, Pt, Pt) {
    let (p, r) = if u <= v { (u, v) } else { (v, u) };
    let shift = (p.0.div_euclid(m2) * m2, p.1.div_euclid(m2) * m2);
    ((p.0 - shift.0, p.1 - shift.1), (r.0 - p.0, r.1 - p.1), shift)
}

fn reduce(p: Pt, m2: i64) -> Pt {
    (p.0.rem_euclid(m2), p.1.rem_euclid(m2))
}

fn to_lattice(p: Pt, m2: i64) -> LatticePoint {
    let (a2, b2) = reduce(p, m2);
    LatticePoint { a2, b2 }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Vertex(Pt),
    /// Edge base point (reduced), displacement, offset of the line from the
    /// base point's coordinate.
    Cross(MapSide, Pt, Pt, i64),
}

struct Builder {
    m2: i64,
    q: i64,
    index: HashMap<Key, usize>,
    nodes: Vec<RefNode>,
    labels: Vec<usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn node(&mut self, key: Key, make: impl FnOnce() -> (RefNode, usize)) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let (n, l) = make();
        self.nodes.push(n);
        self.labels.push(l);
        self.index.insert(key, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn link(&mut self, u: usize, v: usize) {
        if u != v {
            self.edges.insert((u.min(v), u.max(v)));
        }
    }

    fn vertex(&mut self, side: MapSide, p: Pt) -> usize {
        let m2 = self.m2;
        let top = (2 + self.q / 2) as usize;
        self.node(Key::Vertex(reduce(p, m2)), || match side {
            MapSide::Plus => (RefNode::Plus(to_lattice(p, m2)), 0),
            MapSide::Minus => (RefNode::Minus(to_lattice(p, m2)), top),
        })
    }

    /// The coordinate cut on edges of `side`: `a` for `G⁺`, `b` for `G⁻`.
    fn coord(side: MapSide, p: Pt) -> i64 {
        match side {
            MapSide::Plus => p.0,
            MapSide::Minus => p.1,
        }
    }

    /// Doubled line values crossed strictly inside the span of an edge,
    /// increasing.  Lines are odd (half-integers) for `G⁺`, even for `G⁻`.
    fn lines(side: MapSide, u: Pt, v: Pt) -> Vec<i64> {
        let (lo, hi) = {
            let (x, y) = (Self::coord(side, u), Self::coord(side, v));
            (x.min(y), x.max(y))
        };
        let parity = if side == MapSide::Plus { 1 } else { 0 };
        ((lo + 1)..hi).filter(|x| x.rem_euclid(2) == parity).collect()
    }

    /// The crossing node of edge `uv` of `side` with the line `x`.
    fn crossing(&mut self, side: MapSide, u: Pt, v: Pt, x: i64) -> usize {
        let (m2, q) = (self.m2, self.q);
        let (base, disp, shift) = edge_key(u, v, m2);
        let offset = x - Self::coord(side, (base.0 + shift.0, base.1 + shift.1));
        let short = disp == (2, 2);
        let lines = Self::lines(side, u, v);
        let s = lines.len();
        let t = lines.iter().position(|&y| y == x).expect("line crosses the edge") + 1;
        let walk = t.min(s + 1 - t);
        let label = match (side, short) {
            (MapSide::Plus, true) => 1,
            (MapSide::Plus, false) => walk,
            (MapSide::Minus, true) => (2 + q / 2) as usize,
            (MapSide::Minus, false) => (2 + q / 2) as usize - walk,
        };
        let other = (base.0 + disp.0, base.1 + disp.1);
        let line = match side {
            MapSide::Plus => (base.0 + offset).rem_euclid(m2),
            MapSide::Minus => (base.1 + offset).rem_euclid(m2),
        };
        self.node(Key::Cross(side, base, disp, offset), || {
            (RefNode::Crossing { side, from: to_lattice(base, m2), to: to_lattice(other, m2), line, short }, label)
        })
    }

    /// An edge of a map, cut into pieces at its crossings.
    fn add_edge(&mut self, side: MapSide, u: Pt, v: Pt) {
        let (u, v) = if Self::coord(side, u) <= Self::coord(side, v) { (u, v) } else { (v, u) };
        let mut prev = self.vertex(side, u);
        for x in Self::lines(side, u, v) {
            let c = self.crossing(side, u, v, x);
            self.link(prev, c);
            prev = c;
        }
        let end = self.vertex(side, v);
        self.link(prev, end);
    }

    /// A triangle of a map, cut by the lines crossing it.
    fn add_triangle(&mut self, side: MapSide, t: [Pt; 3]) {
        let (lo, hi) = {
            let cs = t.map(|p| Self::coord(side, p));
            (*cs.iter().min().unwrap(), *cs.iter().max().unwrap())
        };
        let parity = if side == MapSide::Plus { 1 } else { 0 };
        for x in ((lo + 1)..hi).filter(|x| x.rem_euclid(2) == parity) {
            let mut hits = Vec::with_capacity(2);
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                if Self::lines(side, t[i], t[j]).contains(&x) {
                    hits.push(self.crossing(side, t[i], t[j], x));
                }
            }
            debug_assert_eq!(hits.len(), 2);
            self.link(hits[0], hits[1]);
        }
    }
}

/// Canonical form of a triangle up to translation by the periods.
fn triangle_key(mut t: [Pt; 3], m2: i64) -> [Pt; 3] {
    t.sort();
    let shift = (t[0].0.div_euclid(m2) * m2, t[0].1.div_euclid(m2) * m2);
    t.map(|p| (p.0 - shift.0, p.1 - shift.1))
}

/// The edges and triangles of `G⁺` in unwrapped doubled coordinates, one
/// representative each.
fn plus_complex(d: usize, q: usize) -> Result<(Vec<(Pt, Pt)>, Vec<[Pt; 3]>)> {
    let l = lattice_points(d, q, Parity::Plus)?;
    let m2 = 2 * l.m as i64;
    let q = q as i64;
    let mut edges = Vec::new();
    let mut triangles = BTreeSet::new();
    for p in &l.points {
        let p = (p.a2, p.b2);
        let at = |da: i64, db: i64| (p.0 + 2 * da, p.1 + 2 * db);
        edges.push((p, at(1, 1)));
        for k in 0..=q {
            edges.push((p, at(q - k, -k)));
        }
        // Diagonal tetrahedra.
        for k in 1..q {
            let tet = [at(0, 0), at(1, 1), at(q - k, -k), at(q - k + 1, -k + 1)];
            for skip in 0..4 {
                let mut tri = [(0, 0); 3];
                let mut n = 0;
                for (i, &x) in tet.iter().enumerate() {
                    if i != skip {
                        tri[n] = x;
                        n += 1;
                    }
                }
                triangles.insert(triangle_key(tri, m2));
            }
        }
        // Side triangles of the vertical and horizontal antiprisms.
        for tri in [
            [at(0, 0), at(1, 1), at(0, q)],
            [at(1, 1), at(0, q), at(1, q + 1)],
            [at(0, 0), at(1, 1), at(q, 0)],
            [at(1, 1), at(q, 0), at(q + 1, 1)],
        ] {
            triangles.insert(triangle_key(tri, m2));
        }
    }
    let expected = 2 * l.m * l.m;
    if triangles.len() != expected {
        return Err(Error::Degenerate(format!("expected {expected} triangles, found {}", triangles.len())));
    }
    Ok((edges, triangles.into_iter().collect()))
}

/// Builds `H` and the labelling `d` for the two-copies construction with
/// parameters `(d, q)`, `q` even.
pub fn refinement_graph(d: usize, q: usize) -> Result<RefinementGraph> {
    if q % 2 == 1 || q == 0 {
        return Err(Error::InvalidArgument(format!("the refinement graph needs q even and positive, got {q}")));
    }
    let (edges, triangles) = plus_complex(d, q)?;
    let m = (d * q) as i64;
    let qi = q as i64;
    let mut b = Builder { m2: 2 * m, q: qi, index: HashMap::new(), nodes: Vec::new(), labels: Vec::new(), edges: BTreeSet::new() };
    let phi = |p: Pt| (p.1 + 1 - qi, p.0 + 1);

    for &(u, v) in &edges {
        b.add_edge(MapSide::Plus, u, v);
        b.add_edge(MapSide::Minus, phi(u), phi(v));
    }
    for &t in &triangles {
        b.add_triangle(MapSide::Plus, t);
        b.add_triangle(MapSide::Minus, t.map(phi));
    }
    // Horizontal polygons of G⁺ (b = j) against vertical polygons of G⁻
    // (a = c): the segment joins the crossing of the horizontal G⁺ edge
    // spanning c with the crossing of the vertical G⁻ edge spanning j.
    for j in 0..m {
        for x in (0..2 * m).filter(|x| x % 2 == 1) {
            let c = (x - 1) / 2;
            let a0 = c - (c - j).rem_euclid(qi);
            let up = b.crossing(MapSide::Plus, (2 * a0, 2 * j), (2 * a0 + 2 * qi, 2 * j), x);
            let b0 = 2 * j - (2 * j - (x - qi)).rem_euclid(2 * qi);
            let across = b.crossing(MapSide::Minus, (x, b0), (x, b0 + 2 * qi), 2 * j);
            b.link(up, across);
        }
    }
    let n = b.nodes.len();
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in &b.edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    Ok(RefinementGraph { d, q, nodes: b.nodes, labels: b.labels, edges: b.edges.into_iter().collect(), adjacency })
}

/// Outcome of [`verify_d_lemma`].
#[derive(Clone, Debug, Serialize)]
pub struct DLemmaReport {
    pub pass: bool,
    pub nodes: usize,
    pub h_edges: usize,
    pub augmentation_edges: usize,
    /// Every vertex of `V⁺` has label 0.
    pub property_zero_on_plus: bool,
    /// Every other node has an `H̃`-neighbour with label one less.
    pub property_descent: bool,
    /// No node outside `V⁺` has an `H̃`-neighbour with label two or more
    /// less.
    pub property_no_jumps: bool,
    /// The labels equal BFS distance from `V⁺` in `H̃`.
    pub labels_are_distances: bool,
    pub dist_tilde: Option<usize>,
    pub dist_h: Option<usize>,
    pub expected_distance: usize,
    /// Human-readable counterexamples (first few).
    pub witnesses: Vec<String>,
}

/// Checks the three labelling properties node by node, that the labels are
/// the `H̃`-distances from `V⁺`, and that `V⁺` and `V⁻` are `2 + q/2` apart
/// both in `H̃` and in `H`.
pub fn verify_d_lemma(g: &RefinementGraph) -> DLemmaReport {
    const MAX_WITNESSES: usize = 10;
    let n = g.nodes.len();
    let mut witnesses = Vec::new();
    let note = |w: &mut Vec<String>, s: String| {
        if w.len() < MAX_WITNESSES {
            w.push(s);
        }
    };
    let top = g.labels.iter().max().map_or(0, |m| m + 1);
    let mut class_size = vec![0usize; top];
    for &l in &g.labels {
        class_size[l] += 1;
    }

    let mut p1 = true;
    let mut p2 = true;
    let mut p3 = true;
    for v in 0..n {
        let l = g.labels[v];
        if g.is_plus_vertex(v) {
            if l != 0 {
                p1 = false;
                note(&mut witnesses, format!("plus vertex {:?} has label {l}", g.nodes[v]));
            }
            continue;
        }
        // Augmentation makes the whole class l−1 adjacent to v.
        if l == 0 || class_size[l - 1] == 0 {
            p2 = false;
            note(&mut witnesses, format!("{:?} (label {l}) has no neighbour with label {}", g.nodes[v], l as i64 - 1));
        }
        // Augmentation edges only join labels one apart, so only edges of H
        // can jump.
        for &w in g.h_neighbors(v) {
            if l >= g.labels[w] + 2 {
                p3 = false;
                note(&mut witnesses, format!("{:?} (label {l}) is adjacent to {:?} (label {})", g.nodes[v], g.nodes[w], g.labels[w]));
            }
        }
    }
    let dist = g.distances_from_plus(true);
    let mut same = true;
    for v in 0..n {
        if dist[v] != g.labels[v] {
            same = false;
            note(&mut witnesses, format!("{:?} has label {} but distance {}", g.nodes[v], g.labels[v], dist[v] as i64));
        }
    }
    let dist_tilde = g.plus_minus_distance(true);
    let dist_h = g.plus_minus_distance(false);
    let expected = g.top_label();
    DLemmaReport {
        pass: p1 && p2 && p3 && same && dist_tilde == Some(expected) && dist_h == Some(expected),
        nodes: n,
        h_edges: g.edges.len(),
        augmentation_edges: g.augmentation_edge_count(),
        property_zero_on_plus: p1,
        property_descent: p2,
        property_no_jumps: p3,
        labels_are_distances: same,
        dist_tilde,
        dist_h,
        expected_distance: expected,
        witnesses,
    }
}

/// Outcome of [`cross_check_lemma_maps`].
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub pass: bool,
    pub d: usize,
    pub q: usize,
    /// Width of the exact two-copies prismatoid.
    pub prismatoid_width: usize,
    /// `dist(V⁺, V⁻)` in the combinatorial `H̃`.
    pub map_distance: Option<usize>,
    /// `4 + q/2`.
    pub expected_width: usize,
    pub facets: usize,
    pub vertices: usize,
}

/// Compares the width of the exact two-copies prismatoid with two plus the
/// combinatorial distance of its pair of maps; both must equal `4 + q/2`.
pub fn cross_check_lemma_maps(d: usize, q: usize, alpha: &CirclePoint, tol: &Rational) -> Result<CrossCheckReport> {
    let tc = two_copies_prismatoid(d, q, alpha, tol, 6)?;
    let w = width(&tc.prismatoid)?;
    let g = refinement_graph(d, q)?;
    let map_distance = g.plus_minus_distance(true);
    let expected_width = 4 + q / 2;
    Ok(CrossCheckReport {
        pass: w.width == expected_width && map_distance.map(|x| x + 2) == Some(w.width),
        d,
        q,
        prismatoid_width: w.width,
        map_distance,
        expected_width,
        facets: w.facets,
        vertices: w.n,
    })
}
