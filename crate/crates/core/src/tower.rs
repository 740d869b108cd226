//! One-point suspension with base perturbation: each step turns a
//! `d`-prismatoid with `n > 2d` vertices and width `l` into a
//! `(d+1)`-prismatoid with `n+1` vertices and width at least `l+1`.
//! Iterating `n − 2d` times yields a prismatoid with as many vertices as
//! twice its dimension whose width exceeds its dimension: the dual polytope
//! violates the Hirsch bound.
//!
//! # Step
//!
//! Let `F` be a base facet that is not a simplex and `v` a vertex of the
//! other base.  In `R^{d+1}`, `v` is replaced by `v± = v ± M·e_{d+1}` and a
//! subset of the vertices of `F` receives new coordinate `1` (all others
//! `0`).  With `M = 10^k` large this is, up to scaling the new coordinate,
//! the suspension `v ± e_{d+1}` followed by a perturbation of size `10^{−k}`
//! — the integral form keeps coordinates small.  Every step is verified by
//! recomputing facets and width; a failing step is retried with a larger
//! `M` (smaller perturbation), and with other perturbation supports.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rank, Rational, Vector};
use crate::hull::VPolytope;
use crate::prismatoid::{width, Prismatoid, WidthReport};

/// Record of one verified widening step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerStep {
    pub dim: usize,
    pub n_vertices: usize,
    pub facets: usize,
    pub width: usize,
    /// The perturbation had magnitude `10^epsilon_exponent` (relative to the
    /// suspension offset).
    pub epsilon_exponent: i32,
    /// Index of the suspended vertex in the input polytope.
    pub suspended_vertex: usize,
    /// Indices of the perturbed vertices.
    pub perturbed: Vec<usize>,
    /// Number of candidate polytopes built and checked.
    pub attempts: usize,
    #[serde(rename = "elapsed_ms", serialize_with = "ser_millis")]
    pub elapsed: Duration,
}

fn ser_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

/// Magnitudes tried by [`widen_step`]: `10^initial_exponent`, then smaller
/// by a factor `10^shrink_factor` per retry, at most `max_retries` sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PerturbationSchedule {
    pub initial_exponent: i32,
    pub shrink_factor: u32,
    pub max_retries: usize,
}

impl Default for PerturbationSchedule {
    /// Starts at the largest magnitude that appears in the published
    /// 20-dimensional polytope (`10^{−5}`) and goes down to `10^{−10}`.
    fn default() -> Self {
        PerturbationSchedule { initial_exponent: -5, shrink_factor: 1, max_retries: 6 }
    }
}

/// Which base of a prismatoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Top,
    Bottom,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
        }
    }
}

/// `P` embedded in `x_{d+1} = 0`, with vertex `v` replaced by
/// `v + e_{d+1}` (kept at index `v`) and `v − e_{d+1}` (appended).
pub fn one_point_suspension(p: &VPolytope, v: usize) -> Result<VPolytope> {
    suspension_with(p, v, &int(1), &[])
}

/// Suspension at height `±offset`, with new coordinate `1` on `perturbed`.
fn suspension_with(p: &VPolytope, v: usize, offset: &Rational, perturbed: &[usize]) -> Result<VPolytope> {
    if v >= p.n() {
        return Err(Error::IndexOutOfRange { index: v, size: p.n() });
    }
    if let Some(&bad) = perturbed.iter().find(|&&u| u >= p.n() || u == v) {
        return Err(Error::InvalidArgument(format!("cannot perturb vertex {bad}")));
    }
    let mut rows: Vec<Vector> = p
        .vertices
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let h = if i == v {
                offset.clone()
            } else if perturbed.contains(&i) {
                int(1)
            } else {
                int(0)
            };
            x.extended(h)
        })
        .collect();
    rows.push(p.vertices[v].extended(-offset.clone()));
    Ok(VPolytope { dim: p.dim + 1, vertices: rows })
}

/// A prismatoid whose bases lie in `x_axis = ±1`, as handled by the tower.
#[derive(Clone, Debug)]
pub struct TowerState {
    pub prismatoid: Prismatoid,
    pub axis: usize,
    /// The base being perturbed; kept until it becomes a simplex.
    pub perturbed_side: Option<Side>,
    pub width: usize,
}

impl TowerState {
    pub fn new(prismatoid: Prismatoid, axis: usize) -> Result<Self> {
        let w = width(&prismatoid)?.width;
        Ok(TowerState { prismatoid, axis, perturbed_side: None, width: w })
    }

    /// Vertex indices on a base, sorted.
    pub fn base(&self, side: Side) -> Vec<usize> {
        let sign = if side == Side::Top { int(1) } else { int(-1) };
        (0..self.prismatoid.n()).filter(|&i| self.prismatoid.body.vertices[i].0[self.axis] == sign).collect()
    }

    fn is_simplex(&self, side: Side) -> bool {
        self.base(side).len() == self.prismatoid.dim()
    }

    /// The base to perturb: the current one while it is not a simplex,
    /// otherwise the base with more vertices (top on ties).
    pub fn choose_side(&self) -> Result<Side> {
        if let Some(s) = self.perturbed_side {
            if !self.is_simplex(s) {
                return Ok(s);
            }
        }
        let (t, b) = (self.base(Side::Top).len(), self.base(Side::Bottom).len());
        let s = if b > t { Side::Bottom } else { Side::Top };
        if self.is_simplex(s) {
            return Err(Error::BothBasesSimplices);
        }
        Ok(s)
    }
}

/// One explicitly prescribed widening step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrescribedStep {
    /// Suspended vertex (an index in the current polytope).
    pub vertex: usize,
    /// Suspension offset `10^{−exponent}`, i.e. perturbation `10^{exponent}`.
    pub exponent: i32,
    /// Vertices of the opposite base given new coordinate 1.
    pub perturbed: Vec<usize>,
}

fn pow10(k: i32) -> Rational {
    let base = int(10);
    if k >= 0 {
        (0..k).fold(int(1), |acc, _| acc * &base)
    } else {
        (0..-k).fold(int(1), |acc, _| acc / &base)
    }
}

/// Builds and verifies the candidate of one step; `Ok(None)` when it is not
/// a prismatoid with the expected bases or the width did not grow.
fn try_step(state: &TowerState, step: &PrescribedStep) -> Result<Option<(Prismatoid, WidthReport)>> {
    let body = suspension_with(&state.prismatoid.body, step.vertex, &pow10(-step.exponent), &step.perturbed)?;
    let p = match Prismatoid::from_body(body, state.axis) {
        Ok(p) => p,
        Err(Error::Degenerate(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let r = width(&p)?;
    Ok((r.width > state.width).then_some((p, r)))
}

/// Applies a prescribed step, verifying that the result is a prismatoid of
/// larger width.  When verification fails, the step is retried with the
/// same support and exponents decreasing by `fallback.shrink_factor`, at
/// most `fallback.max_retries − 1` more times.
pub fn apply_step(state: &TowerState, step: &PrescribedStep, fallback: &PerturbationSchedule) -> Result<(TowerState, TowerStep)> {
    let t = Instant::now();
    let side = state.choose_side()?;
    let f = state.base(side);
    if !step.perturbed.iter().all(|u| f.contains(u)) || f.contains(&step.vertex) {
        return Err(Error::InvalidArgument("perturbed vertices must lie on the non-simplex base, the suspended one on the other".into()));
    }
    for k in 0..fallback.max_retries.max(1) {
        let attempt = PrescribedStep { exponent: step.exponent - (k as i32) * fallback.shrink_factor as i32, ..step.clone() };
        if let Some((p, r)) = try_step(state, &attempt)? {
            return Ok(finish(state, side, p, r, &attempt, k + 1, t));
        }
    }
    Err(Error::RetriesExhausted(format!("prescribed step {step:?} failed verification")))
}

fn finish(state: &TowerState, side: Side, p: Prismatoid, r: WidthReport, step: &PrescribedStep, attempts: usize, t: Instant) -> (TowerState, TowerStep) {
    let rec = TowerStep {
        dim: r.d,
        n_vertices: r.n,
        facets: r.facets,
        width: r.width,
        epsilon_exponent: step.exponent,
        suspended_vertex: step.vertex,
        perturbed: step.perturbed.clone(),
        attempts,
        elapsed: t.elapsed(),
    };
    let next = TowerState { prismatoid: p, axis: state.axis, perturbed_side: Some(side), width: r.width };
    (next, rec)
}

/// One widening step with automatic choices.
///
/// The base `F` to perturb is chosen by [`TowerState::choose_side`] and `v`
/// is the lowest-index vertex of the other base.  Perturbation supports are
/// tried in order — single vertices of `F` whose removal leaves a spanning
/// set, then consecutive pairs — each with the magnitudes of `schedule`;
/// the first candidate that verifies is accepted.
pub fn widen_step(state: &TowerState, schedule: &PerturbationSchedule) -> Result<(TowerState, TowerStep)> {
    let t = Instant::now();
    if schedule.max_retries == 0 {
        return Err(Error::InvalidArgument("max_retries must be at least 1".into()));
    }
    let side = state.choose_side()?;
    let f = state.base(side);
    let v = state.base(side.other())[0];
    let mut supports: Vec<Vec<usize>> = f.iter().filter(|&&u| spans_without(state, &f, u)).map(|&u| vec![u]).collect();
    supports.extend(f.windows(2).map(|w| w.to_vec()));
    let mut attempts = 0;
    for support in &supports {
        for k in 0..schedule.max_retries {
            let exponent = schedule.initial_exponent - (k as i32) * schedule.shrink_factor as i32;
            let step = PrescribedStep { vertex: v, exponent, perturbed: support.clone() };
            attempts += 1;
            if let Some((p, r)) = try_step(state, &step)? {
                return Ok(finish(state, side, p, r, &step, attempts, t));
            }
        }
    }
    Err(Error::RetriesExhausted(format!("no perturbation widened the {}-prismatoid after {attempts} attempts", state.prismatoid.dim())))
}

/// Whether the vertices of `face` other than `u` still affinely span it.
fn spans_without(state: &TowerState, face: &[usize], u: usize) -> bool {
    let verts = &state.prismatoid.body.vertices;
    let rest: Vec<usize> = face.iter().copied().filter(|&x| x != u).collect();
    let rows: Vec<Vec<Rational>> = rest[1..].iter().map(|&x| verts[x].sub(&verts[rest[0]]).0).collect();
    rank(&rows) == state.prismatoid.dim() - 1
}

/// Iterates [`widen_step`]; `steps` may not exceed `n − 2d`.
pub fn build_tower(start: TowerState, steps: usize, schedule: &PerturbationSchedule) -> Result<(TowerState, Vec<TowerStep>)> {
    let (n, d) = (start.prismatoid.n(), start.prismatoid.dim());
    if n < 2 * d + steps {
        return Err(Error::InvalidArgument(format!("at most n − 2d = {} steps are possible", n.saturating_sub(2 * d))));
    }
    let mut state = start;
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let (next, rec) = widen_step(&state, schedule)?;
        state = next;
        trace.push(rec);
    }
    Ok((state, trace))
}

/// Applies a prescribed step exactly as given: the result must be a
/// prismatoid with the expected bases, but its width is only recorded, not
/// required to grow.  This reproduces published constructions whose
/// individual steps were not all widening.
pub fn apply_step_exact(state: &TowerState, step: &PrescribedStep) -> Result<(TowerState, TowerStep)> {
    let t = Instant::now();
    let side = state.choose_side()?;
    let f = state.base(side);
    if !step.perturbed.iter().all(|u| f.contains(u)) || f.contains(&step.vertex) {
        return Err(Error::InvalidArgument("perturbed vertices must lie on the non-simplex base, the suspended one on the other".into()));
    }
    let body = suspension_with(&state.prismatoid.body, step.vertex, &pow10(-step.exponent), &step.perturbed)?;
    let p = Prismatoid::from_body(body, state.axis)?;
    let r = width(&p)?;
    Ok(finish(state, side, p, r, step, 1, t))
}

/// Iterates [`apply_step_exact`] over a prescribed schedule.
pub fn replay_tower_exact(start: TowerState, schedule: &[PrescribedStep]) -> Result<(TowerState, Vec<TowerStep>)> {
    let mut state = start;
    let mut trace = Vec::with_capacity(schedule.len());
    for step in schedule {
        let (next, rec) = apply_step_exact(&state, step)?;
        state = next;
        trace.push(rec);
    }
    Ok((state, trace))
}

/// Iterates [`apply_step`] over a prescribed schedule.
pub fn replay_tower(start: TowerState, schedule: &[PrescribedStep], fallback: &PerturbationSchedule) -> Result<(TowerState, Vec<TowerStep>)> {
    let mut state = start;
    let mut trace = Vec::with_capacity(schedule.len());
    for step in schedule {
        let (next, rec) = apply_step(&state, step, fallback)?;
        state = next;
        trace.push(rec);
    }
    Ok((state, trace))
}

/// The 15 steps that turn the 25-vertex 5-prismatoid (vertex order of
/// [`crate::gallery::gallery`]: 12 top vertices, then 13 bottom vertices)
/// into the published 20-dimensional polytope of width 21.
///
/// Steps 1–8 suspend top vertex 10 and perturb the bottom base; steps 9–15
/// suspend the last bottom vertex and perturb the top base, the first of
/// them moving all nine copies of vertex 10.
pub fn published_schedule() -> Vec<PrescribedStep> {
    let b = |k: usize| 12 + k;
    let s = |vertex, exponent, perturbed: Vec<usize>| PrescribedStep { vertex, exponent, perturbed };
    let mut out = vec![
        s(10, -7, vec![b(11)]),
        s(10, -7, vec![b(10)]),
        s(10, -7, vec![b(0), b(9)]),
        s(10, -10, vec![b(0), b(1)]),
        s(10, -11, vec![b(1), b(2)]),
        s(10, -11, vec![b(2), b(3)]),
        s(10, -11, vec![b(3), b(4)]),
        s(10, -11, vec![b(4), b(5)]),
    ];
    let copies: Vec<usize> = std::iter::once(10).chain(25..33).collect();
    out.push(s(b(12), -5, copies));
    for (e, pert) in [(-7, vec![11]), (-7, vec![2]), (-7, vec![2, 4]), (-8, vec![4, 7]), (-8, vec![5, 7]), (-9, vec![1, 5])] {
        out.push(s(b(12), e, pert));
    }
    out
}

/// Facet count, width and the comparison with the Hirsch bound `n − d` for
/// the dual polytope (which has `n` facets, dimension `d` and diameter at
/// least the width).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonHirschReport {
    pub n: usize,
    pub dim: usize,
    pub facets: usize,
    pub width: usize,
    pub hirsch_bound: usize,
    pub violates_hirsch: bool,
    #[serde(serialize_with = "crate::prismatoid::ser_rational")]
    pub hirsch_excess: Rational,
}

pub fn verify_non_hirsch(p: &Prismatoid) -> Result<NonHirschReport> {
    let r = width(p)?;
    let bound = r.n - r.d;
    Ok(NonHirschReport {
        n: r.n,
        dim: r.d,
        facets: r.facets,
        width: r.width,
        hirsch_bound: bound,
        violates_hirsch: r.width > bound,
        hirsch_excess: r.hirsch_excess_of_dual,
    })
}
