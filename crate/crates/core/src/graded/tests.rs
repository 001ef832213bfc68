use super::*;
use crate::finring::{make_ring, matrix_ring, zero_multiplication_ring, RingElement};
use crate::smallcat::{arrow_category, one_object, pair_groupoid, Monoid};

fn spans(ring: &FiniteRing, gens: &[&[usize]]) -> Vec<AdditiveSubgroup> {
    gens.iter()
        .map(|g| {
            let elems: Vec<RingElement> = g.iter().map(|&i| ring.basis_element(i)).collect();
            AdditiveSubgroup::span(ring, &elems).unwrap()
        })
        .collect()
}

/// `M_2(Z/m)` with `S_{g : b → a} = span(E_ab)`; pair groupoid morphism `(a, b)` has index `2a + b`.
fn matrix_grading(m: u64) -> Grading {
    let r = matrix_ring(m, 2).unwrap();
    let comps = spans(&r, &[&[0], &[1], &[2], &[3]]);
    attach_grading(&r, &pair_groupoid(2).unwrap(), comps).unwrap()
}

/// Upper triangular ring in the arrow category's basis: `idA, idB, f` with `f·idA = f = idB·f`.
fn arrow_algebra() -> FiniteRing {
    let mut c = vec![0u64; 27];
    let idx = |i: usize, j: usize, k: usize| (i * 3 + j) * 3 + k;
    c[idx(0, 0, 0)] = 1;
    c[idx(1, 1, 1)] = 1;
    c[idx(2, 0, 2)] = 1;
    c[idx(1, 2, 2)] = 1;
    make_ring(2, 3, c, None).unwrap()
}

fn arrow_grading() -> Grading {
    let r = arrow_algebra();
    attach_grading(&r, &arrow_category(), spans(&r, &[&[0], &[1], &[2]])).unwrap()
}

#[test]
fn matrix_grading_is_valid_and_object_unital() {
    let g = matrix_grading(2);
    let report = object_unital_check(&g);
    assert!(report.verdict.holds);
    assert_eq!(report.units.unwrap(), vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]]);
    assert!(strongly_graded_check(&g).holds);
    let set = induced_idempotents(&g).unwrap();
    assert!(is_strong(&set));
}

#[test]
fn misplaced_component_violates_grading() {
    let r = matrix_ring(2, 2).unwrap();
    let comps = spans(&r, &[&[0], &[2], &[1], &[3]]);
    assert!(matches!(
        attach_grading(&r, &pair_groupoid(2).unwrap(), comps),
        Err(GradingError::GradingViolation { .. })
    ));
}

#[test]
fn overlapping_components_are_not_a_direct_sum() {
    let r = matrix_ring(2, 2).unwrap();
    let comps = spans(&r, &[&[0], &[1], &[1], &[3]]);
    assert!(matches!(
        attach_grading(&r, &pair_groupoid(2).unwrap(), comps),
        Err(GradingError::NotDirectSum { .. })
    ));
    let wrong_len = spans(&r, &[&[0, 1, 2, 3]]);
    assert!(matches!(
        attach_grading(&r, &pair_groupoid(2).unwrap(), wrong_len),
        Err(GradingError::ShapeMismatch(_))
    ));
}

#[test]
fn trivial_category_grading() {
    let r = matrix_ring(3, 2).unwrap();
    let cat = one_object(&Monoid::trivial());
    let g = attach_grading(&r, &cat, vec![AdditiveSubgroup::whole(&r)]).unwrap();
    let unital = object_unital_check(&g);
    assert_eq!(unital.units.unwrap()[0], r.find_identity().unwrap().into_coords());
    let report = homset_strongly_graded_report(&g).unwrap();
    assert!(report.holds() && report.agree && report.corner_equation.holds);
    assert_eq!(induced_idempotents(&g).unwrap().len(), 1);
}

#[test]
fn zero_multiplication_ring_is_not_object_unital() {
    let r = zero_multiplication_ring(2, 1).unwrap();
    let g = attach_grading(&r, &one_object(&Monoid::trivial()), vec![AdditiveSubgroup::whole(&r)]).unwrap();
    let report = object_unital_check(&g);
    assert!(!report.verdict.holds);
    assert_eq!(report.verdict.witness, Some(ObjectUnitalDefect::ComponentNotUnital { object: 0 }));
    assert_eq!(induced_idempotents(&g).unwrap_err(), GradingError::NotObjectUnital);
}

#[test]
fn group_graded_unit_is_global_unit() {
    // (Z/2)[C_2] with basis e, s.
    let mut c = vec![0u64; 8];
    let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
    c[idx(0, 0, 0)] = 1;
    c[idx(0, 1, 1)] = 1;
    c[idx(1, 0, 1)] = 1;
    c[idx(1, 1, 0)] = 1;
    let r = make_ring(2, 2, c, None).unwrap();
    let g = attach_grading(&r, &one_object(&Monoid::cyclic(2)), spans(&r, &[&[0], &[1]])).unwrap();
    assert_eq!(object_unital_check(&g).units.unwrap()[0], r.find_identity().unwrap().into_coords());
    assert!(strongly_graded_check(&g).holds);
}

#[test]
fn arrow_grading_strong_but_not_homset_strong() {
    let g = arrow_grading();
    assert!(strongly_graded_check(&g).holds);
    assert!(object_unital_check(&g).verdict.holds);
    assert_eq!(homset_strongly_graded_report(&g).unwrap_err(), GradingError::CategoryNotHomSetStrong);
    let set = induced_idempotents(&g).unwrap();
    assert!(!is_strong(&set));
    assert!(corner_equation_check(&g).unwrap().holds);
}

#[test]
fn matrix_grading_homset_report() {
    for m in [2, 3, 4] {
        let g = matrix_grading(m);
        let report = homset_strongly_graded_report(&g).unwrap();
        assert!(report.holds() && report.agree);
        assert!(report.corner_equation.holds);
    }
}

#[test]
fn zero_component_for_invertible_morphism_breaks_strong_grading() {
    // Z/2 × Z/2 over the pair groupoid, nothing off the diagonal.
    let mut c = vec![0u64; 8];
    c[0] = 1;
    c[7] = 1;
    let r = make_ring(2, 2, c, None).unwrap();
    let zero = AdditiveSubgroup::zero(&r);
    let comps = vec![spans(&r, &[&[0]])[0].clone(), zero.clone(), zero, spans(&r, &[&[1]])[0].clone()];
    let g = attach_grading(&r, &pair_groupoid(2).unwrap(), comps).unwrap();
    assert!(object_unital_check(&g).verdict.holds);
    let w = strongly_graded_check(&g).witness.unwrap();
    assert_eq!((w.g, w.h), (1, 2));
}

#[test]
fn groupoid_grading_needs_strong_grading_for_homset_strongness() {
    // Upper triangular M_2(Z/2) over the pair groupoid with S_{(1,0)} = 0: object
    // unital and graded by a groupoid, yet not hom-set strongly graded.
    let mut c = vec![0u64; 27];
    let idx = |i: usize, j: usize, k: usize| (i * 3 + j) * 3 + k;
    c[idx(0, 0, 0)] = 1;
    c[idx(0, 1, 1)] = 1;
    c[idx(1, 2, 1)] = 1;
    c[idx(2, 2, 2)] = 1;
    let ring_t2 = make_ring(2, 3, c, None).unwrap();
    let comps = spans(&ring_t2, &[&[0], &[1], &[], &[2]]);
    let g = attach_grading(&ring_t2, &pair_groupoid(2).unwrap(), comps).unwrap();
    assert!(g.category().is_groupoid());
    assert!(object_unital_check(&g).verdict.holds);
    assert!(!strongly_graded_check(&g).holds);
    let report = homset_strongly_graded_report(&g).unwrap();
    assert!(!report.holds());
    assert!(report.agree);
}

#[test]
fn flags_summarize_checks() {
    let f = graded_flags(&matrix_grading(2));
    assert!(f.object_unital && f.strongly_graded);
    assert_eq!(f.homset_strongly_graded, Some(true));
    let f = graded_flags(&arrow_grading());
    assert_eq!(f.homset_strongly_graded, None);
    assert_eq!(f.induced_idempotents.map(|u| u.len()), Some(2));
}
