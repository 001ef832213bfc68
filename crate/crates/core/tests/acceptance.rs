use peirce::corpus::{generate_suite, mutate, Axiom, CorpusError, Instance, SuiteInstance, Validated};
use peirce::finring::{
    constants_match_under, cyclic_ring, enumerate_one_sided_ideals, matrix_ring, matrix_ring_over, FiniteRing, Side,
    DEFAULT_LATTICE_CAP,
};
use peirce::graded::{corner_equation_check, homset_strongly_graded_report, induced_idempotents, object_unital_check, strongly_graded_check};
use peirce::idempotents::{
    chain_profile, corner_lattice_correspondence, is_strong, peirce_table, strong_condition_report, validate_complete_set,
};
use peirce::skewalg::build_category_algebra;
use peirce::smallcat::{arrow_category, build_mx, homset_strong_report, one_object, pair_groupoid, Monoid};
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;

fn suite(name: &str) -> Result<Vec<SuiteInstance>, String> {
    generate_suite(name).map_err(|e| format!("suite {name} failed to generate: {e}"))
}

fn validated(inst: &SuiteInstance) -> Result<Validated, String> {
    inst.instance.validate().map_err(|e| format!("seed {} is invalid: {e}", inst.seed))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn idempotent_strongness() -> Outcome {
    let start = Instant::now();
    let instances = suite("prop-2.4")?;
    ensure(instances.len() >= 200, || format!("only {} instances", instances.len()))?;
    let (mut strong, mut weak) = (0, 0);
    for inst in &instances {
        let set = validated(inst)?.idempotent_set().ok_or("instance without idempotent set")?;
        ensure(set.ring().order() <= 256 && set.len() <= 4, || format!("seed {} exceeds the size bounds", inst.seed))?;
        let report = strong_condition_report(&peirce_table(&set));
        ensure(report.agree, || format!("seed {}: conditions disagree {report:?}", inst.seed))?;
        if report.all_hold() {
            strong += 1;
        } else {
            weak += 1;
        }
    }
    ensure(strong > 0 && weak > 0, || format!("suite is not mixed: {strong} strong, {weak} not"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} instances, {strong} strong, {weak} not strong, {secs:.2}s", instances.len()))
}

fn lattice_correspondence() -> Outcome {
    let mut checked = 0;
    for inst in &suite("prop-2.4")? {
        let set = validated(inst)?.idempotent_set().ok_or("instance without idempotent set")?;
        if !is_strong(&set) {
            continue;
        }
        let table = peirce_table(&set);
        for i in 0..set.len() {
            for j in 0..set.len() {
                if table.component(i, j).is_zero() {
                    continue;
                }
                for side in [Side::Left, Side::Right] {
                    let c = corner_lattice_correspondence(&table, i, j, side, DEFAULT_LATTICE_CAP)
                        .map_err(|e| format!("seed {}: {e}", inst.seed))?;
                    ensure(
                        c.beta_after_alpha_is_identity
                            && c.alpha_after_beta_is_identity
                            && c.preserves_inclusion
                            && c.source_size == c.target_size
                            && c.source_height == c.target_height,
                        || format!("seed {} ({i}, {j}) {side}: {c:?}", inst.seed),
                    )?;
                    checked += 1;
                }
            }
        }
    }
    ensure(checked > 0, || "no correspondence was checked".into())?;
    Ok(format!("{checked} correspondences"))
}

/// All subsets of the ring closed under addition and left multiplication: (count, longest chain length).
fn brute_force_left_ideals(ring: &FiniteRing) -> (usize, usize) {
    let elems: Vec<Vec<u64>> = ring.elements().map(|e| e.into_coords()).collect();
    let n = elems.len();
    assert!(n <= 16, "brute force is only for tiny rings");
    let pos = |v: &[u64]| elems.iter().position(|e| e.as_slice() == v).unwrap();
    let add: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| pos(&ring.add_coords(&elems[a], &elems[b]))).collect()).collect();
    let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| pos(&ring.mul_coords(&elems[a], &elems[b]))).collect()).collect();
    let zero = pos(&vec![0; ring.rank()]);
    let mut ideals: Vec<u32> = Vec::new();
    for mask in 0u32..(1 << n) {
        let has = |i: usize| mask >> i & 1 == 1;
        if !has(zero) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| has(i)).collect();
        let closed = members.iter().all(|&x| members.iter().all(|&y| has(add[x][y])) && (0..n).all(|r| has(mul[r][x])));
        if closed {
            ideals.push(mask);
        }
    }
    ideals.sort_by_key(|m| m.count_ones());
    let mut chain = vec![0usize; ideals.len()];
    for a in 0..ideals.len() {
        for b in 0..a {
            if ideals[b] != ideals[a] && ideals[b] & ideals[a] == ideals[b] {
                chain[a] = chain[a].max(chain[b] + 1);
            }
        }
    }
    (ideals.len(), chain.into_iter().max().unwrap_or(0))
}

fn fixture_counts() -> Outcome {
    let z2 = cyclic_ring(2).unwrap();
    let m2 = matrix_ring(2, 2).unwrap();
    let arrow = build_category_algebra(&z2, &arrow_category()).unwrap();
    let group = build_category_algebra(&z2, &one_object(&Monoid::cyclic(2))).unwrap();
    let mut found = Vec::new();
    let mut mismatches = Vec::new();
    for (name, ring, size, height) in [
        ("M2(Z/2)", &m2, 5, Some(2)),
        ("T2(Z/2)", arrow.ring(), 8, None),
        ("(Z/2)[C2]", group.ring(), 3, None),
    ] {
        let lattice = enumerate_one_sided_ideals(ring, Side::Left, DEFAULT_LATTICE_CAP).unwrap();
        let oracle = brute_force_left_ideals(ring);
        if (lattice.size(), lattice.height()) != oracle {
            mismatches.push(format!("{name}: enumeration {:?} vs brute force {oracle:?}", (lattice.size(), lattice.height())));
        }
        if lattice.size() != size || height.is_some_and(|h| h != lattice.height()) {
            mismatches.push(format!("{name}: left lattice size {} height {}, expected size {size}", lattice.size(), lattice.height()));
        }
        found.push(format!("{name} {}", lattice.size()));
    }
    let diag = [m2.basis_element(0), m2.basis_element(3)];
    let profile = chain_profile(&m2, &validate_complete_set(&m2, &diag).unwrap(), DEFAULT_LATTICE_CAP).unwrap();
    let corner_sizes: Vec<usize> = profile.corners.iter().map(|c| c.lattice.left_size).collect();
    if corner_sizes != [2, 2] {
        mismatches.push(format!("M2(Z/2) corner lattices {corner_sizes:?}"));
    }
    if mismatches.is_empty() {
        Ok(found.join(", "))
    } else {
        Err(mismatches.join("; "))
    }
}

fn category_strongness() -> Outcome {
    let start = Instant::now();
    let instances = suite("prop-3.2")?;
    ensure(instances.len() >= 500, || format!("only {} instances", instances.len()))?;
    let mut strong = 0;
    for inst in &instances {
        let Validated::Category(cat) = validated(inst)? else {
            return Err("non-category instance".into());
        };
        ensure(cat.object_count() <= 4 && cat.morphism_count() <= 20, || format!("seed {} is too large", inst.seed))?;
        let report = homset_strong_report(&cat);
        ensure(report.agree, || format!("seed {}: {report:?}", inst.seed))?;
        strong += usize::from(report.all_hold());
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    ensure(strong > 0 && strong < instances.len(), || "suite is not mixed".into())?;
    Ok(format!("{} categories, {strong} hom-set strong, {secs:.2}s", instances.len()))
}

fn groupoids_are_strong() -> Outcome {
    let instances = suite("groupoids")?;
    ensure(instances.len() >= 100, || format!("only {} instances", instances.len()))?;
    for inst in &instances {
        let Validated::Category(cat) = validated(inst)? else {
            return Err("non-category instance".into());
        };
        ensure(cat.is_groupoid(), || format!("seed {} is not a groupoid", inst.seed))?;
        ensure(homset_strong_report(&cat).all_hold(), || format!("seed {} is not hom-set strong", inst.seed))?;
    }
    Ok(format!("{} groupoids", instances.len()))
}

fn mx_categories() -> Outcome {
    let monoids = [
        ("C1", Monoid::trivial()),
        ("C2", Monoid::cyclic(2)),
        ("C3", Monoid::cyclic(3)),
        ("{0,1}", Monoid::zero_one()),
        ("T2", Monoid::full_transformation(2)),
    ];
    let mut count = 0;
    for (name, m) in &monoids {
        for s in 1..=3 {
            let cat = build_mx(m, s).map_err(|e| e.to_string())?;
            ensure(homset_strong_report(&cat).all_hold(), || format!("MX({name}, {s}) is not hom-set strong"))?;
            ensure(cat.is_groupoid() == m.is_group(), || format!("MX({name}, {s}) groupoid flag"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (M, s) pairs"))
}

fn skew_claims() -> Outcome {
    let instances = suite("prop-5.3")?;
    for inst in &instances {
        let Validated::System(alg) = validated(inst)? else {
            return Err("non-system instance".into());
        };
        ensure(strongly_graded_check(alg.grading()).holds, || format!("seed {} not strongly graded", inst.seed))?;
        ensure(object_unital_check(alg.grading()).verdict.holds, || format!("seed {} not object unital", inst.seed))?;
    }
    Ok(format!("{} algebras", instances.len()))
}

fn local_units_strong() -> Outcome {
    let instances = suite("prop-5.3")?;
    let (mut strong, mut weak) = (0, 0);
    for inst in &instances {
        let Validated::System(alg) = validated(inst)? else {
            return Err("non-system instance".into());
        };
        let units = induced_idempotents(alg.grading()).map_err(|e| e.to_string())?;
        let lhs = is_strong(&units);
        let rhs = homset_strong_report(alg.category()).all_hold();
        ensure(lhs == rhs, || format!("seed {}: idempotents strong {lhs}, category {rhs}", inst.seed))?;
        if lhs {
            let report = homset_strongly_graded_report(alg.grading()).map_err(|e| format!("seed {}: {e}", inst.seed))?;
            ensure(report.holds(), || format!("seed {}: graded report fails", inst.seed))?;
            strong += 1;
        } else {
            weak += 1;
        }
    }
    ensure(strong > 0 && weak > 0, || "suite is not mixed".into())?;
    Ok(format!("{strong} hom-set strong, {weak} not"))
}

fn corner_equation() -> Outcome {
    let mut gradings = 0;
    for name in ["prop-2.4", "prop-3.2", "prop-5.3", "groupoids", "mutations"] {
        for inst in &suite(name)? {
            if let Instance::System { .. } = inst.instance {
                let Validated::System(alg) = validated(inst)? else { unreachable!() };
                if !object_unital_check(alg.grading()).verdict.holds {
                    continue;
                }
                let v = corner_equation_check(alg.grading()).map_err(|e| e.to_string())?;
                ensure(v.holds, || format!("{name} seed {}: {:?}", inst.seed, v.witness))?;
                gradings += 1;
            }
        }
    }
    Ok(format!("{gradings} gradings"))
}

fn pair_groupoid_matrix() -> Outcome {
    for m in [2, 3] {
        let t = cyclic_ring(m).unwrap();
        let alg = build_category_algebra(&t, &pair_groupoid(2).unwrap()).unwrap();
        let target = matrix_ring_over(&t, 2).unwrap();
        // MX index (0, a, b) = 2a + b is the morphism b → a, sent to E_ab at the same index.
        ensure(constants_match_under(alg.ring(), &target, &[0, 1, 2, 3]), || format!("T = Z/{m}"))?;
    }
    Ok("T = Z/2, Z/3".into())
}

fn mutation_soundness() -> Outcome {
    let instances = suite("mutations")?;
    let mut hit = BTreeSet::new();
    let mut skipped = 0;
    for inst in &instances {
        let mutation = inst.mutation.ok_or("entry without mutation")?;
        match mutate(&inst.instance, &mutation) {
            Ok(m) => {
                let err = m.instance.validate().err();
                ensure(err.as_ref().is_some_and(|e| mutation.target.accepts(e)), || {
                    format!("seed {} {:?}: {} gave {:?}", inst.seed, mutation.target, m.description, err)
                })?;
                hit.insert(format!("{:?}", mutation.target));
            }
            Err(CorpusError::CannotTarget(_)) => skipped += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    ensure(hit.len() == Axiom::ALL.len(), || format!("only {} axioms were exercised", hit.len()))?;
    Ok(format!("{} mutations, {skipped} not targetable, all {} axioms exercised", instances.len() - skipped, hit.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("strong idempotent conditions agree", idempotent_strongness),
        ("corner lattice correspondence", lattice_correspondence),
        ("fixture lattice counts", fixture_counts),
        ("hom-set strong conditions agree", category_strongness),
        ("groupoids are hom-set strong", groupoids_are_strong),
        ("MX categories", mx_categories),
        ("skew algebra grading claims", skew_claims),
        ("local units strong iff category hom-set strong", local_units_strong),
        ("corner equation", corner_equation),
        ("pair groupoid algebra is a matrix ring", pair_groupoid_matrix),
        ("mutation soundness", mutation_soundness),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
