//! Suspension and the widening tower.

use prismatoid::gallery::gallery;
use prismatoid::hull::{facet_enumeration, VPolytope};
use prismatoid::prismatoid::{check_width_bound, width, Prismatoid};
use prismatoid::tower::{
    apply_step, build_tower, one_point_suspension, published_schedule, widen_step, PerturbationSchedule, PrescribedStep, TowerState,
};
use prismatoid::Error;

fn q20_state() -> TowerState {
    TowerState::new(Prismatoid::from_body(gallery("q20").unwrap(), 4).unwrap(), 4).unwrap()
}

#[test]
fn suspension_of_a_square_is_a_pyramid_pair() {
    let square = VPolytope::from_int_rows(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let s = one_point_suspension(&square, 3).unwrap();
    assert_eq!((s.dim, s.n()), (3, 5));
    // Each edge missing the suspended vertex gives two triangles, each edge
    // through it a single quadrilateral.
    assert_eq!(facet_enumeration(&s).unwrap().len(), 6);
    assert!(matches!(one_point_suspension(&square, 4), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn three_widening_steps_from_q20() {
    let (state, trace) = build_tower(q20_state(), 3, &PerturbationSchedule::default()).unwrap();
    let got: Vec<(usize, usize)> = trace.iter().map(|s| (s.dim, s.n_vertices)).collect();
    assert_eq!(got, vec![(6, 26), (7, 27), (8, 28)]);
    for (s, min) in trace.iter().zip([7, 8, 9]) {
        assert!(s.width >= min, "dimension {}: width {}", s.dim, s.width);
    }
    assert_eq!(width(&state.prismatoid).unwrap().width, trace[2].width);
}

#[test]
fn published_schedule_starts_like_the_automatic_one() {
    let sched = published_schedule();
    assert_eq!(sched.len(), 15);
    let fallback = PerturbationSchedule { initial_exponent: 0, shrink_factor: 1, max_retries: 6 };
    let (s1, rec) = apply_step(&q20_state(), &sched[0], &fallback).unwrap();
    assert_eq!((rec.dim, rec.n_vertices, rec.width, rec.attempts), (6, 26, 7, 1));
    let (_, rec2) = widen_step(&q20_state(), &PerturbationSchedule::default()).unwrap();
    assert_eq!(rec2.width, 7);
    assert_eq!(s1.width, 7);
}

#[test]
fn invalid_steps_are_rejected() {
    let st = q20_state();
    let n = st.prismatoid.n();
    assert!(matches!(build_tower(st.clone(), 16, &PerturbationSchedule::default()), Err(Error::InvalidArgument(_))));
    let bad = PrescribedStep { vertex: 10, exponent: -7, perturbed: vec![3] };
    let fallback = PerturbationSchedule::default();
    assert!(matches!(apply_step(&st, &bad, &fallback), Err(Error::InvalidArgument(_))));
    let none = PerturbationSchedule { max_retries: 0, ..fallback };
    assert!(matches!(widen_step(&st, &none), Err(Error::InvalidArgument(_))));
    assert_eq!(n, 25);
}

#[test]
fn five_dimensional_gallery_satisfies_width_bound() {
    let p = Prismatoid::from_body(gallery("q20").unwrap(), 4).unwrap();
    assert!(check_width_bound(&p).unwrap());
}
