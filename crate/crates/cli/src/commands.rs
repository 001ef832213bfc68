use crate::input::{self, digest, InputError, Source};
use crate::report::Report;
use peirce::corpus::{generate_suite_with, manifest, verify_suite};
use peirce::finring::{enumerate_one_sided_ideals, FiniteRing, RingElement, Side};
use peirce::graded::{corner_equation_check, grading_from_generators, homset_strongly_graded_report, object_unital_check, strongly_graded_check};
use peirce::idempotents::{axiom_record, peirce_table, strong_condition_report, validate_complete_set};
use peirce::skewalg::{build_skew_algebra, strong_idempotent_equivalence_check, validate_system};
use peirce::smallcat::{build_mx, finiteness_report, group_predicates, homset_strong_report, Monoid, SmallCategory};
use peirce::verdict::SubgroupSummary;
use serde_json::json;
use std::path::Path;

fn ring_summary(ring: &FiniteRing) -> serde_json::Value {
    json!({
        "modulus": ring.modulus(),
        "rank": ring.rank(),
        "order": ring.order().to_string(),
        "identity": ring.find_identity().map(RingElement::into_coords),
    })
}

fn elements(ring: &FiniteRing, coords: Vec<Vec<u64>>) -> Result<Vec<RingElement>, InputError> {
    Ok(coords.into_iter().map(|c| ring.element(c)).collect::<Result<_, _>>()?)
}

pub fn check_ring(path: &Path) -> Result<Report, InputError> {
    let loaded = input::load_ring(path)?;
    let ring = loaded.value;
    let mut report = Report::new(loaded.sources);
    report.verdict("associative", true);
    report.detail("ring", &ring_summary(&ring));
    report.detail("unital", &ring.is_unital());
    Ok(report)
}

fn idempotent_input(first: &Path, second: Option<&Path>) -> Result<(FiniteRing, Vec<RingElement>, Vec<Source>), InputError> {
    let loaded = match second {
        Some(idems) => input::load_idempotents(Some(first), idems)?,
        None => input::load_idempotents(None, first)?,
    };
    let (ring, coords) = loaded.value;
    let elems = elements(&ring, coords)?;
    Ok((ring, elems, loaded.sources))
}

pub fn peirce(first: &Path, second: Option<&Path>) -> Result<Report, InputError> {
    let (ring, elems, sources) = idempotent_input(first, second)?;
    let mut report = Report::new(sources);
    let record = axiom_record(&ring, &elems)?;
    report.verdict("nonzero", record.nonzero);
    report.verdict("idempotent", record.idempotent);
    report.verdict("orthogonal", record.orthogonal);
    report.verdict("left_complete", record.left_complete);
    report.verdict("right_complete", record.right_complete);
    report.detail("ring", &ring_summary(&ring));
    match validate_complete_set(&ring, &elems) {
        Err(e) => report.witness("complete_set", &json!({ "kind": e.kind(), "message": e.to_string() })),
        Ok(set) => {
            let table = peirce_table(&set);
            report.verdict("direct_sum", table.is_direct_sum());
            let comps: Vec<Vec<SubgroupSummary>> = table.components().iter().map(|row| row.iter().map(Into::into).collect()).collect();
            report.detail("components", &comps);
        }
    }
    Ok(report)
}

pub fn check_strong(first: &Path, second: Option<&Path>) -> Result<Report, InputError> {
    let (ring, elems, sources) = idempotent_input(first, second)?;
    let set = validate_complete_set(&ring, &elems)?;
    let r = strong_condition_report(&peirce_table(&set));
    let mut report = Report::new(sources);
    report.checked("condition1", &r.condition1);
    report.checked("condition2", &r.condition2);
    report.checked("condition3", &r.condition3);
    report.verdict("agree", r.agree);
    report.detail("idempotents", &set.len());
    Ok(report)
}

pub fn ideal_lattice(path: &Path, side: Side, members: bool, cap: usize) -> Result<Report, InputError> {
    let loaded = input::load_ring(path)?;
    let ring = loaded.value;
    let lattice = enumerate_one_sided_ideals(&ring, side, cap)?;
    let mut report = Report::new(loaded.sources);
    report.verdict("ascending_chain_condition", true);
    report.verdict("descending_chain_condition", true);
    report.detail("side", &side);
    report.detail("size", &lattice.size());
    report.detail("height", &lattice.height());
    report.detail("covers", &lattice.covers());
    if members {
        let m: Vec<SubgroupSummary> = lattice.members().iter().map(Into::into).collect();
        report.detail("members", &m);
    }
    Ok(report)
}

fn category_report(cat: &SmallCategory, sources: Vec<Source>) -> Report {
    let r = homset_strong_report(cat);
    let mut report = Report::new(sources);
    report.checked("condition1", &r.condition1);
    report.checked("condition2", &r.condition2);
    report.checked("condition3", &r.condition3);
    report.verdict("agree", r.agree);
    report.detail("objects", &cat.object_count());
    report.detail("morphisms", &cat.morphism_count());
    report.detail("groupoid", &cat.is_groupoid());
    report.detail("finiteness", &finiteness_report(cat));
    let groups: Vec<_> = (0..cat.object_count()).map(|a| group_predicates(cat, a).ok()).collect();
    report.detail("endomorphism_groups", &groups);
    report
}

pub fn check_category(path: &Path) -> Result<Report, InputError> {
    let loaded = input::load_category(path)?;
    Ok(category_report(&loaded.value, loaded.sources))
}

fn builtin_monoid(name: &str) -> Option<Monoid> {
    let (base, n) = match name.split_once(':') {
        Some((b, n)) => (b, Some(n.parse::<usize>().ok().filter(|&n| n >= 1)?)),
        None => (name, None),
    };
    Some(match (base, n) {
        ("trivial", None) => Monoid::trivial(),
        ("zero-one", None) => Monoid::zero_one(),
        ("klein", None) => Monoid::cyclic(2).product(&Monoid::cyclic(2)),
        ("cyclic", Some(n)) => Monoid::cyclic(n),
        ("full-transformation", Some(n)) if n <= 4 => Monoid::full_transformation(n),
        ("symmetric", Some(n)) if n <= 5 => Monoid::symmetric(n),
        _ => return None,
    })
}

pub fn build_mx_report(monoid: &str, s: usize) -> Result<Report, InputError> {
    let (m, sources) = match builtin_monoid(monoid) {
        Some(m) => {
            let src = Source { role: "monoid".into(), path: format!("builtin:{monoid}"), sha256: digest(&m) };
            (m, vec![src])
        }
        None => {
            let loaded = input::load_monoid(Path::new(monoid))?;
            (loaded.value, loaded.sources)
        }
    };
    let cat = build_mx(&m, s)?;
    let mut report = category_report(&cat, sources);
    report.verdict("groupoid_iff_group", cat.is_groupoid() == m.is_group());
    report.detail("monoid_order", &m.order());
    report.detail("monoid_is_group", &m.is_group());
    report.detail("category", &cat.to_spec());
    Ok(report)
}

pub fn check_grading(path: &Path) -> Result<Report, InputError> {
    let loaded = input::load_grading(path)?;
    let g = loaded.value;
    let grading = grading_from_generators(&g.ring, &g.category, &g.components)?;
    let mut report = Report::new(loaded.sources);
    report.checked("strongly_graded", &strongly_graded_check(&grading));
    let unital = object_unital_check(&grading);
    report.checked("object_unital", &unital.verdict);
    if let Some(units) = &unital.units {
        report.detail("local_units", units);
        report.checked("corner_equation", &corner_equation_check(&grading)?);
        if let Ok(h) = homset_strongly_graded_report(&grading) {
            report.verdict("homset_strongly_graded", h.holds());
            if !h.holds() {
                report.witness("homset_strongly_graded", &h.conditions);
            }
        }
    }
    let orders: Vec<String> = grading.components().iter().map(|c| c.order().to_string()).collect();
    report.detail("component_orders", &orders);
    report.detail("ring", &ring_summary(&g.ring));
    Ok(report)
}

pub fn build_skew(path: &Path) -> Result<Report, InputError> {
    let loaded = input::load_system(path)?;
    let s = loaded.value;
    let system = validate_system(&s.category, &s.object_rings, &s.maps)?;
    let alg = build_skew_algebra(&system)?;
    let mut report = Report::new(loaded.sources);
    report.checked("strongly_graded", &strongly_graded_check(alg.grading()));
    report.checked("object_unital", &object_unital_check(alg.grading()).verdict);
    report.checked("corner_equation", &corner_equation_check(alg.grading())?);
    let record = strong_idempotent_equivalence_check(&alg)?;
    report.verdict("equivalence", record.holds());
    if !record.holds() {
        report.witness("equivalence", &record);
    }
    report.detail("equivalence_record", &record);
    let units: Vec<Vec<u64>> = (0..alg.category().object_count()).map(|a| alg.local_unit(a)).collect();
    report.detail("local_units", &units);
    report.detail("ring", &ring_summary(alg.ring()));
    Ok(report)
}

pub fn seed_override() -> Result<Option<u64>, InputError> {
    match std::env::var("WORKBENCH_SEED") {
        Err(_) => Ok(None),
        Ok(s) => s.trim().parse().map(Some).map_err(|_| InputError::Library {
            kind: "InvalidSeed",
            message: format!("WORKBENCH_SEED={s:?} is not an unsigned 64-bit integer"),
        }),
    }
}

fn suite_source(name: &str) -> Result<Source, InputError> {
    Ok(Source { role: "suite".into(), path: format!("suite:{name}"), sha256: digest(&manifest(name)?) })
}

pub fn verify_prop(name: &str, cap: usize) -> Result<Report, InputError> {
    let over = seed_override()?;
    let instances = generate_suite_with(name, over)?;
    let r = verify_suite(name, &instances, cap)?;
    let mut report = Report::new(vec![suite_source(name)?]);
    report.verdict("all_instances", r.all_passed());
    if !r.all_passed() {
        report.witness("all_instances", &r.failures);
    }
    report.detail("suite", &r.suite);
    report.detail("instances", &r.instances);
    report.detail("passed", &r.passed);
    report.detail("tallies", &r.tallies);
    report.detail("seed_override", &over);
    Ok(report)
}

pub fn gen_suite(name: &str) -> Result<Report, InputError> {
    let over = seed_override()?;
    let instances = generate_suite_with(name, over)?;
    let invalid: Vec<usize> = instances
        .iter()
        .enumerate()
        .filter(|(_, i)| i.instance.validate().is_err())
        .map(|(k, _)| k)
        .collect();
    let mut report = Report::new(vec![suite_source(name)?]);
    report.verdict("valid", invalid.is_empty());
    if !invalid.is_empty() {
        report.witness("valid", &invalid);
    }
    report.detail("seed_override", &over);
    report.detail("instances", &instances);
    Ok(report)
}
