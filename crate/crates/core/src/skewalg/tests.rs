use super::*;
use crate::finring::{constants_match_under, cyclic_ring, direct_product, matrix_ring_over, zero_multiplication_ring, DEFAULT_LATTICE_CAP};
use crate::smallcat::{arrow_category, build_mx, one_object, pair_groupoid, Monoid};

fn z3_squared() -> FiniteRing {
    direct_product(&[cyclic_ring(3).unwrap(), cyclic_ring(3).unwrap()]).unwrap()
}

fn identity_perm(n: usize) -> Vec<usize> {
    (0..n).collect()
}

#[test]
fn constant_functor_is_valid() {
    let z2 = cyclic_ring(2).unwrap();
    for cat in [arrow_category(), pair_groupoid(3).unwrap(), build_mx(&Monoid::zero_one(), 2).unwrap()] {
        let sys = constant_system(&z2, &cat).unwrap();
        let alg = build_skew_algebra(&sys).unwrap();
        assert_eq!(alg.ring().rank(), cat.morphism_count());
        assert!(alg.strongly_graded && alg.object_unital);
    }
}

#[test]
fn swap_action_of_c2() {
    let r = z3_squared();
    let c2 = one_object(&Monoid::cyclic(2));
    let maps = vec![identity_matrix(2), vec![vec![0, 1], vec![1, 0]]];
    let sys = validate_system(&c2, &[r], &maps).unwrap();
    let alg = build_skew_algebra(&sys).unwrap();
    assert_eq!(alg.ring().rank(), 4);
    assert!(alg.strongly_graded && alg.object_unital);
    assert_eq!(alg.local_unit(0), vec![1, 1, 0, 0]);
}

#[test]
fn three_cycle_on_c2_is_not_functorial() {
    let z3 = cyclic_ring(3).unwrap();
    let r = direct_product(&[z3.clone(), z3.clone(), z3]).unwrap();
    let c2 = one_object(&Monoid::cyclic(2));
    let cycle = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
    let err = validate_system(&c2, &[r], &[identity_matrix(3), cycle]).unwrap_err();
    assert_eq!(err, SkewError::NotFunctorial(1, 1));
}

#[test]
fn validation_errors_in_order() {
    let c2 = one_object(&Monoid::cyclic(2));
    let r = z3_squared();
    let zero = vec![vec![0, 0], vec![0, 0]];
    assert_eq!(
        validate_system(&c2, &[r.clone()], &[identity_matrix(2), zero]).unwrap_err(),
        SkewError::NotRingIso { morphism: 1, defect: IsoDefect::NotBijective }
    );
    let shear = vec![vec![1, 1], vec![0, 1]];
    assert_eq!(
        validate_system(&c2, &[r.clone()], &[identity_matrix(2), shear]).unwrap_err(),
        SkewError::NotRingIso { morphism: 1, defect: IsoDefect::NotMultiplicative { i: 0, j: 1 } }
    );
    let swap = vec![vec![0, 1], vec![1, 0]];
    assert_eq!(
        validate_system(&c2, &[r.clone()], &[swap.clone(), swap.clone()]).unwrap_err(),
        SkewError::IdentityNotIdentity(0)
    );
    let zm = zero_multiplication_ring(3, 2).unwrap();
    assert_eq!(validate_system(&c2, &[zm], &[identity_matrix(2), swap.clone()]).unwrap_err(), SkewError::NotUnital(0));
    let pg = pair_groupoid(2).unwrap();
    let err = validate_system(&pg, &[cyclic_ring(2).unwrap(), cyclic_ring(3).unwrap()], &vec![vec![vec![1]]; 4]).unwrap_err();
    assert_eq!(err, SkewError::ModulusMismatch { object: 1, expected: 2, found: 3 });
    assert!(matches!(validate_system(&c2, &[r], &[identity_matrix(2)]), Err(SkewError::ShapeMismatch(_))));
}

#[test]
fn pair_groupoid_algebra_is_matrix_ring() {
    for t in [cyclic_ring(2).unwrap(), cyclic_ring(3).unwrap(), z3_squared()] {
        let alg = build_category_algebra(&t, &pair_groupoid(2).unwrap()).unwrap();
        let m2 = matrix_ring_over(&t, 2).unwrap();
        assert!(constants_match_under(alg.ring(), &m2, &identity_perm(m2.rank())));
    }
}

#[test]
fn arrow_algebra_is_upper_triangular() {
    let alg = build_category_algebra(&cyclic_ring(2).unwrap(), &arrow_category()).unwrap();
    // idA ↦ E22, idB ↦ E11, f ↦ E12 in the triangular basis (E11, E12, E22).
    let mut c = vec![0u64; 27];
    let idx = |i: usize, j: usize, k: usize| (i * 3 + j) * 3 + k;
    c[idx(0, 0, 0)] = 1;
    c[idx(0, 1, 1)] = 1;
    c[idx(1, 2, 1)] = 1;
    c[idx(2, 2, 2)] = 1;
    let t2 = make_ring(2, 3, c, None).unwrap();
    assert!(constants_match_under(alg.ring(), &t2, &[2, 0, 1]));
}

#[test]
fn trivial_group_algebra_is_the_ring() {
    let r = z3_squared();
    let alg = build_category_algebra(&r, &one_object(&Monoid::trivial())).unwrap();
    assert!(constants_match_under(alg.ring(), &r, &identity_perm(2)));
}

#[test]
fn small_monoid_algebras() {
    let z2 = cyclic_ring(2).unwrap();
    let group_alg = build_category_algebra(&z2, &one_object(&Monoid::cyclic(2))).unwrap();
    assert_eq!(group_alg.ring().rank(), 2);
    let lattice = enumerate_one_sided_ideals(group_alg.ring(), Side::Left, DEFAULT_LATTICE_CAP).unwrap();
    assert_eq!(lattice.size(), 3);
    let mx = build_category_algebra(&z2, &build_mx(&Monoid::zero_one(), 1).unwrap()).unwrap();
    assert_eq!(mx.ring().rank(), 2);
    let z3 = cyclic_ring(3).unwrap();
    let m = build_category_algebra(&z3, &one_object(&Monoid::zero_one())).unwrap();
    assert_eq!((m.ring().modulus(), m.ring().rank()), (3, 2));
}

#[test]
fn strong_idempotents_match_homset_strongness() {
    let z2 = cyclic_ring(2).unwrap();
    let pg = build_category_algebra(&z2, &pair_groupoid(2).unwrap()).unwrap();
    let rec = strong_idempotent_equivalence_check(&pg).unwrap();
    assert!(rec.idempotents_strong && rec.category_homset_strong && rec.groupoid);
    assert_eq!(rec.graded_report_holds, Some(true));
    let arrow = build_category_algebra(&z2, &arrow_category()).unwrap();
    let rec = strong_idempotent_equivalence_check(&arrow).unwrap();
    assert!(!rec.idempotents_strong && !rec.category_homset_strong && rec.holds());
    let mx = build_category_algebra(&z2, &build_mx(&Monoid::zero_one(), 2).unwrap()).unwrap();
    let rec = strong_idempotent_equivalence_check(&mx).unwrap();
    assert!(rec.idempotents_strong && rec.category_homset_strong && !rec.groupoid);
    assert!(rec.holds());
}

#[test]
fn artinian_reports() {
    let z2 = cyclic_ring(2).unwrap();
    let pg = build_category_algebra(&z2, &pair_groupoid(2).unwrap()).unwrap();
    let rep = artinian_criteria_report(&pg, DEFAULT_LATTICE_CAP).unwrap();
    assert!(rep.consistent);
    assert!(rep.corners.iter().all(|c| c.order == 2 && c.lattice.left_size == 2));
    assert_eq!(rep.ring.left_size, 5);
    let g = build_category_algebra(&z2, &one_object(&Monoid::cyclic(2))).unwrap();
    let rep = artinian_criteria_report(&g, DEFAULT_LATTICE_CAP).unwrap();
    assert_eq!(rep.corners[0].lattice.left_size, 3);
    assert_eq!(rep.ring.left_size, 3);
    let arrow = build_category_algebra(&z2, &arrow_category()).unwrap();
    let rep = artinian_criteria_report(&arrow, DEFAULT_LATTICE_CAP).unwrap();
    assert!(rep.corners.iter().all(|c| c.order == 2));
    assert_eq!(rep.ring.left_size, 7);
}

#[test]
fn local_units_are_induced_idempotents() {
    let r = z3_squared();
    let alg = build_category_algebra(&r, &build_mx(&Monoid::cyclic(2), 2).unwrap()).unwrap();
    let set = induced_idempotents(alg.grading()).unwrap();
    for a in 0..2 {
        assert_eq!(set.elements()[a].coords(), alg.local_unit(a).as_slice());
    }
}

#[test]
fn spec_round_trip() {
    let r = z3_squared();
    let c2 = one_object(&Monoid::cyclic(2));
    let sys = validate_system(&c2, &[r], &[identity_matrix(2), vec![vec![0, 1], vec![1, 0]]]).unwrap();
    let json = serde_json::to_string(&sys.to_spec()).unwrap();
    let back: SystemSpec = serde_json::from_str(&json).unwrap();
    let again = system_from_spec(&back).unwrap();
    assert_eq!(again.maps(), sys.maps());
}
