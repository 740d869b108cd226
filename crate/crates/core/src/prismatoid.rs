//! Prismatoids: polytopes with two parallel facets (the bases) that contain
//! all vertices, together with their width — the dual-graph distance between
//! the bases — and the derived excess values.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, int, Rational, Vector};
use crate::gallery::lift_bases;
use crate::graph::{bfs_distance, build_adjacency, DualGraph};
use crate::hull::{affine_dimension, facet_enumeration, FacetList, VPolytope};

/// A full-dimensional polytope with two designated parallel base facets
/// covering all vertices, its facets and its dual graph.
#[derive(Clone, Debug)]
pub struct Prismatoid {
    pub body: VPolytope,
    pub base_top: usize,
    pub base_bottom: usize,
    pub facets: FacetList,
    pub dual: DualGraph,
}

/// Width and excess values of a prismatoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub n: usize,
    #[serde(rename = "dim")]
    pub d: usize,
    pub facets: usize,
    pub width: usize,
    /// `(width − d)/(n − d)`.
    #[serde(serialize_with = "ser_rational")]
    pub prismatoid_excess: Rational,
    /// `width/(n − d) − 1`: the Hirsch excess of the dual polytope, whose
    /// diameter is at least the width.
    #[serde(rename = "hirsch_excess", serialize_with = "ser_rational")]
    pub hirsch_excess_of_dual: Rational,
    #[serde(rename = "elapsed_ms", serialize_with = "ser_millis")]
    pub elapsed: Duration,
}

pub(crate) fn ser_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

fn ser_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl WidthReport {
    /// Builds a report from raw counts, computing both excess values.
    pub fn from_counts(n: usize, d: usize, facets: usize, width: usize, elapsed: Duration) -> Result<Self> {
        if n <= d {
            return Err(Error::InvalidArgument(format!("{n} vertices in dimension {d}")));
        }
        let nd = int((n - d) as i64);
        let prismatoid_excess = (int(width as i64) - int(d as i64)) / &nd;
        let hirsch_excess_of_dual = int(width as i64) / &nd - int(1);
        Ok(WidthReport { n, d, facets, width, prismatoid_excess, hirsch_excess_of_dual, elapsed })
    }
}

/// All unordered pairs of parallel facets (opposite normals) whose incidence
/// sets together cover every point.
pub fn detect_bases(fl: &FacetList) -> Vec<(usize, usize)> {
    let n = fl.source.n();
    let mut out = Vec::new();
    for i in 0..fl.len() {
        for j in (i + 1)..fl.len() {
            let (fi, fj) = (&fl.facets[i], &fl.facets[j]);
            if fi.incident.count() + fj.incident.count() < n || !opposite(&fi.plane.normal, &fj.plane.normal) {
                continue;
            }
            if fi.incident.union(&fj.incident).count() == n {
                out.push((i, j));
            }
        }
    }
    out
}

/// Whether `v = −λ·u` for some `λ > 0`.
fn opposite(u: &Vector, v: &Vector) -> bool {
    let Some(k) = u.0.iter().position(|x| !x.is_zero()) else { return false };
    if v.0[k].is_zero() || (v.0[k].is_positive() == u.0[k].is_positive()) {
        return false;
    }
    let lambda = &v.0[k] / &u.0[k];
    u.0.iter().zip(&v.0).all(|(a, b)| a * &lambda == *b)
}

impl Prismatoid {
    /// `conv(Q⁺×{1} ∪ Q⁻×{−1})`, with the two lifted copies as bases.
    pub fn assemble(top: &VPolytope, bottom: &VPolytope) -> Result<Self> {
        for q in [top, bottom] {
            if affine_dimension(q) != q.dim {
                return Err(Error::Degenerate("base is not full-dimensional".into()));
            }
        }
        let body = lift_bases(top, bottom)?;
        Self::from_body(body, top.dim)
    }

    /// A polytope whose coordinate `axis` is `+1` on one base and `−1` on
    /// the other; the facets `x_axis = ±1` are designated as bases.
    pub fn from_body(body: VPolytope, axis: usize) -> Result<Self> {
        if axis >= body.dim {
            return Err(Error::IndexOutOfRange { index: axis, size: body.dim });
        }
        if body.vertices.iter().any(|v| v.0[axis] != int(1) && v.0[axis] != int(-1)) {
            return Err(Error::InvalidArgument(format!("coordinate {axis} is not ±1 on every vertex")));
        }
        let facets = facet_enumeration(&body)?;
        let find = |sign: i64| {
            facets.facets.iter().position(|f| {
                f.plane.normal.0.iter().enumerate().all(|(k, x)| if k == axis { x.signum() == int(sign) } else { x.is_zero() })
            })
        };
        let (Some(base_top), Some(base_bottom)) = (find(1), find(-1)) else {
            return Err(Error::Degenerate("a base is not a facet".into()));
        };
        let dual = build_adjacency(&facets);
        Ok(Prismatoid { body, base_top, base_bottom, facets, dual })
    }

    /// A prismatoid whose bases are found by [`detect_bases`] (the first
    /// pair is designated).
    pub fn detect(body: VPolytope) -> Result<Self> {
        let facets = facet_enumeration(&body)?;
        let &(base_top, base_bottom) =
            detect_bases(&facets).first().ok_or_else(|| Error::Degenerate("no pair of parallel covering facets".into()))?;
        let dual = build_adjacency(&facets);
        Ok(Prismatoid { body, base_top, base_bottom, facets, dual })
    }

    pub fn dim(&self) -> usize {
        self.body.dim
    }

    pub fn n(&self) -> usize {
        self.body.n()
    }

    /// Indices of the vertices on the top and bottom bases.
    pub fn base_vertices(&self) -> (Vec<usize>, Vec<usize>) {
        (self.facets.facets[self.base_top].incident.to_vec(), self.facets.facets[self.base_bottom].incident.to_vec())
    }
}

/// Width (base-to-base dual distance) and excess values.
pub fn width(p: &Prismatoid) -> Result<WidthReport> {
    let t = Instant::now();
    let w = bfs_distance(&p.dual, p.base_top, p.base_bottom)?;
    WidthReport::from_counts(p.n(), p.dim(), p.facets.len(), w, t.elapsed())
}

/// The bound `width ≤ n/3 + 1` for 5-prismatoids, as usually stated.
///
/// It fails for small prismatoids: two 4-simplex bases in general position
/// give `n = 10` and width 5.  What the counting argument behind it bounds is
/// the width of the pair of maps, see [`check_map_width_bound`].
pub fn check_width_bound(p: &Prismatoid) -> Result<bool> {
    check_width_bound_report(&width(p)?)
}

/// [`check_width_bound`] on an existing report.
pub fn check_width_bound_report(r: &WidthReport) -> Result<bool> {
    if r.d != 5 {
        return Err(Error::InvalidArgument(format!("width bound applies to dimension 5, got {}", r.d)));
    }
    Ok(int(r.width as i64) <= int(r.n as i64) / int(3) + int(1))
}

/// The bound `width − 2 ≤ n/3 + 1` on the width of the pair of maps of a
/// 5-prismatoid, i.e. `width ≤ n/3 + 3`.
pub fn check_map_width_bound(p: &Prismatoid) -> Result<bool> {
    check_map_width_bound_report(&width(p)?)
}

/// [`check_map_width_bound`] on an existing report.
pub fn check_map_width_bound_report(r: &WidthReport) -> Result<bool> {
    if r.d != 5 {
        return Err(Error::InvalidArgument(format!("width bound applies to dimension 5, got {}", r.d)));
    }
    Ok(int(r.width as i64) <= int(r.n as i64) / int(3) + int(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_width_two() {
        let top = VPolytope::from_int_rows(&[vec![-1], vec![1]]).unwrap();
        let bot = VPolytope::from_int_rows(&[vec![-2], vec![2]]).unwrap();
        let p = Prismatoid::assemble(&top, &bot).unwrap();
        let r = width(&p).unwrap();
        assert_eq!((r.n, r.d, r.width), (4, 2, 2));
        assert!(r.prismatoid_excess.is_zero());
    }
}
