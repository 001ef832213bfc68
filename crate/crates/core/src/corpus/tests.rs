use super::*;
use crate::finring::{constants_match_under, cyclic_ring, matrix_ring};
use crate::smallcat::Monoid;

fn validate(inst: &Instance) -> Validated {
    inst.validate().unwrap_or_else(|e| panic!("{e}: {}", inst.canonical_json()))
}

fn random_category(seed: u64) -> Instance {
    let r = Recipe::RandomCategory { max_objects: 4, max_points: 2, generators: 4, max_morphisms: 20 };
    generate(&r, seed).unwrap()
}

#[test]
fn matrix_ring_recipe() {
    let inst = generate(&Recipe::MatrixRing { modulus: 2, n: 2, conjugate: false }, 7).unwrap();
    let Validated::IdempotentSet(set) = validate(&inst) else { panic!() };
    assert!(constants_match_under(set.ring(), &matrix_ring(2, 2).unwrap(), &[0, 1, 2, 3]));
    assert!((1..=2).contains(&set.len()));
    for seed in 0..20 {
        let inst = generate(&Recipe::MatrixRing { modulus: 4, n: 3, conjugate: true }, seed);
        assert!(matches!(inst, Err(CorpusError::ParameterOutOfRange(_))));
        validate(&generate(&Recipe::MatrixRing { modulus: 3, n: 2, conjugate: true }, seed).unwrap());
    }
}

#[test]
fn mx_recipe_over_c2_is_a_groupoid() {
    let r = Recipe::MxCategory { monoid: MonoidChoice::Cyclic { order: 2 }, objects: 2 };
    let Validated::Category(cat) = validate(&generate(&r, 0).unwrap()) else { panic!() };
    assert_eq!(cat.morphism_count(), 8);
    assert!(cat.is_groupoid());
}

#[test]
fn monoid_algebra_of_zero_one() {
    let r = Recipe::MonoidAlgebra { modulus: 3, monoid: MonoidChoice::ZeroOne };
    let Validated::IdempotentSet(set) = validate(&generate(&r, 0).unwrap()) else { panic!() };
    assert_eq!((set.ring().modulus(), set.ring().rank()), (3, 2));
    // b_i · b_j = b_{ij} for the integers 0, 1.
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let mut e = vec![0, 0];
        e[i * j] = 1;
        assert_eq!(set.ring().mul_coords(&set.ring().unit_vector(i), &set.ring().unit_vector(j)), e);
    }
}

#[test]
fn generation_is_deterministic() {
    let recipes = [
        Recipe::RandomCategory { max_objects: 4, max_points: 3, generators: 5, max_morphisms: 30 },
        Recipe::RandomGroupoid { max_components: 3, max_objects: 5, max_morphisms: 40 },
        Recipe::SkewAlgebra {
            modulus: 2,
            rank: 3,
            category: Box::new(Recipe::MxCategory { monoid: MonoidChoice::Cyclic { order: 2 }, objects: 1 }),
        },
        Recipe::Corner { source: Box::new(Recipe::MatrixRing { modulus: 3, n: 2, conjugate: true }) },
    ];
    for r in &recipes {
        for seed in [0, 1, u64::MAX] {
            let a = generate(r, seed).unwrap().canonical_json();
            assert_eq!(a, generate(r, seed).unwrap().canonical_json());
        }
    }
    let distinct: std::collections::BTreeSet<String> = (0..20).map(|s| random_category(s).canonical_json()).collect();
    assert!(distinct.len() > 10);
}

#[test]
fn every_recipe_family_validates() {
    let cat = Recipe::RandomCategory { max_objects: 3, max_points: 2, generators: 3, max_morphisms: 6 };
    let recipes = [
        cat.clone(),
        Recipe::RandomGroupoid { max_components: 3, max_objects: 4, max_morphisms: 20 },
        Recipe::MxCategory { monoid: MonoidChoice::Random { points: 3, generators: 2, max_order: 6 }, objects: 2 },
        Recipe::MonoidAlgebra { modulus: 2, monoid: MonoidChoice::RandomGroup { max_order: 6 } },
        Recipe::SkewAlgebra { modulus: 2, rank: 2, category: Box::new(cat.clone()) },
        Recipe::DirectProduct {
            factors: vec![
                Recipe::MatrixRing { modulus: 2, n: 2, conjugate: true },
                Recipe::SkewAlgebra { modulus: 2, rank: 1, category: Box::new(cat.clone()) },
            ],
        },
        Recipe::Corner { source: Box::new(Recipe::SkewAlgebra { modulus: 2, rank: 1, category: Box::new(cat) }) },
    ];
    for r in &recipes {
        for seed in 0..15 {
            validate(&generate(r, seed).unwrap());
        }
    }
}

#[test]
fn random_categories_respect_caps() {
    for seed in 0..50 {
        let Validated::Category(cat) = validate(&random_category(seed)) else { panic!() };
        assert!(cat.object_count() <= 4 && cat.morphism_count() <= 20);
    }
    for seed in 0..50 {
        let r = Recipe::RandomGroupoid { max_components: 3, max_objects: 4, max_morphisms: 20 };
        let Validated::Category(cat) = validate(&generate(&r, seed).unwrap()) else { panic!() };
        assert!(cat.is_groupoid() && cat.object_count() <= 4 && cat.morphism_count() <= 20);
    }
}

#[test]
fn parameter_errors() {
    let bad = [
        Recipe::MatrixRing { modulus: 1, n: 2, conjugate: false },
        Recipe::MatrixRing { modulus: 2, n: 5, conjugate: false },
        Recipe::MonoidAlgebra { modulus: 2, monoid: MonoidChoice::FullTransformation { points: 3 } },
        Recipe::SkewAlgebra { modulus: 2, rank: 1, category: Box::new(Recipe::MatrixRing { modulus: 2, n: 2, conjugate: false }) },
        Recipe::Corner { source: Box::new(Recipe::MxCategory { monoid: MonoidChoice::Trivial, objects: 2 }) },
        Recipe::DirectProduct { factors: vec![] },
        Recipe::RandomCategory { max_objects: 0, max_points: 1, generators: 0, max_morphisms: 4 },
    ];
    for r in &bad {
        assert!(matches!(generate(r, 0), Err(CorpusError::ParameterOutOfRange(_))), "{r:?}");
    }
    let mixed = Recipe::DirectProduct {
        factors: vec![
            Recipe::MatrixRing { modulus: 2, n: 1, conjugate: false },
            Recipe::MatrixRing { modulus: 3, n: 1, conjugate: false },
        ],
    };
    assert_eq!(generate(&mixed, 0).unwrap_err().kind(), "ModulusMismatch");
}

#[test]
fn suites_and_manifests() {
    assert_eq!(generate_suite("prop-9.9").unwrap_err(), CorpusError::UnknownSuite("prop-9.9".into()));
    let sizes: Vec<usize> = SUITES.iter().map(|s| manifest(s).unwrap().entries.len()).collect();
    assert!(sizes[0] >= 200 && sizes[1] >= 500 && sizes[3] >= 100);
    let a = generate_suite("prop-5.3").unwrap();
    let b = generate_suite_with("prop-5.3", Some(99)).unwrap();
    assert_eq!(a.len(), b.len());
    assert!(a.iter().zip(&b).any(|(x, y)| x.instance != y.instance));
    assert_eq!(generate_suite_with("prop-5.3", Some(99)).unwrap(), b);
}

#[test]
fn orthogonality_mutation_duplicates_an_idempotent() {
    let r = matrix_ring(2, 2).unwrap();
    let inst = Instance::IdempotentSet { ring: r.to_spec(), idempotents: vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]] };
    let m = mutate(&inst, &Mutation { target: Axiom::Orthogonality, seed: 0 }).unwrap();
    let Instance::IdempotentSet { idempotents, .. } = &m.instance else { panic!() };
    assert_eq!(idempotents[0], idempotents[1]);
    assert_eq!(m.instance.validate().unwrap_err().kind(), "NotOrthogonal");
    let single = Instance::IdempotentSet { ring: r.to_spec(), idempotents: vec![vec![1, 0, 0, 1]] };
    assert_eq!(
        mutate(&single, &Mutation { target: Axiom::Completeness, seed: 0 }).unwrap_err(),
        CorpusError::CannotTarget(Axiom::Completeness)
    );
    assert_eq!(
        mutate(&single, &Mutation { target: Axiom::Functoriality, seed: 0 }).unwrap_err(),
        CorpusError::CannotTarget(Axiom::Functoriality)
    );
}

#[test]
fn functoriality_mutation_of_a_c2_system() {
    let r = Recipe::SkewAlgebra {
        modulus: 2,
        rank: 3,
        category: Box::new(Recipe::MxCategory { monoid: MonoidChoice::Cyclic { order: 2 }, objects: 1 }),
    };
    for seed in 0..5 {
        let inst = generate(&r, seed).unwrap();
        let m = mutate(&inst, &Mutation { target: Axiom::Functoriality, seed }).unwrap();
        assert_eq!(m.instance.validate().unwrap_err().kind(), "NotFunctorial");
    }
    let flat = Recipe::SkewAlgebra {
        modulus: 2,
        rank: 2,
        category: Box::new(Recipe::MxCategory { monoid: MonoidChoice::Cyclic { order: 2 }, objects: 1 }),
    };
    let inst = generate(&flat, 0).unwrap();
    assert!(matches!(mutate(&inst, &Mutation { target: Axiom::Functoriality, seed: 0 }), Err(CorpusError::CannotTarget(_))));
}

#[test]
fn composition_entry_mutations() {
    let cat = Instance::Category { category: crate::smallcat::one_object(&Monoid::zero_one()).to_spec() };
    let m = mutate(&cat, &Mutation { target: Axiom::CategoryIdentityLaw, seed: 3 }).unwrap();
    assert_eq!(m.instance.validate().unwrap_err().kind(), "IdentityLawViolation");
    let m = mutate(&cat, &Mutation { target: Axiom::CompositeDefined, seed: 3 }).unwrap();
    assert_eq!(m.instance.validate().unwrap_err().kind(), "MissingComposite");
    let mx = generate(&Recipe::MxCategory { monoid: MonoidChoice::ZeroOne, objects: 2 }, 0).unwrap();
    let m = mutate(&mx, &Mutation { target: Axiom::CategoryAssociativity, seed: 1 }).unwrap();
    assert!(matches!(m.instance.validate(), Err(InstanceError::Category(CategoryError::NotAssociative(..)))));
}

#[test]
fn ring_level_mutations() {
    let z3 = cyclic_ring(3).unwrap();
    let inst = Instance::IdempotentSet { ring: z3.to_spec(), idempotents: vec![vec![1]] };
    // x·y ↦ 2xy is still associative, so no single constant change breaks rank one.
    assert!(matches!(mutate(&inst, &Mutation { target: Axiom::RingAssociativity, seed: 0 }), Err(CorpusError::CannotTarget(_))));
    let m2 = Instance::IdempotentSet { ring: matrix_ring(2, 2).unwrap().to_spec(), idempotents: vec![vec![1, 0, 0, 1]] };
    for seed in 0..5 {
        let m = mutate(&m2, &Mutation { target: Axiom::RingAssociativity, seed }).unwrap();
        assert!(matches!(m.instance.validate(), Err(InstanceError::Ring(RingError::NotAssociative(..)))));
    }
    let m = mutate(&inst, &Mutation { target: Axiom::Idempotence, seed: 0 }).unwrap();
    assert_eq!(m.instance.validate().unwrap_err().kind(), "NotIdempotent");
}
