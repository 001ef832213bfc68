use super::{mutate, CorpusError, Mutation, SuiteInstance, Validated};
use crate::finring::Side;
use crate::graded::corner_equation_check;
use crate::idempotents::{corner_lattice_correspondence, peirce_table, strong_condition_report};
use crate::skewalg::strong_idempotent_equivalence_check;
use crate::smallcat::homset_strong_report;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteFailure {
    pub index: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub passed: usize,
    pub failures: Vec<SuiteFailure>,
    /// Counts of instance classes seen, e.g. strong versus not strong.
    pub tallies: BTreeMap<String, usize>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Outcome = Result<Vec<String>, String>;

/// Run the per-instance checks of a suite.
///
/// - `prop-2.4`: the three strongness conditions agree; on strong instances every
///   nonzero `S_ij` gives mutually inverse, inclusion-preserving lattice maps on both sides.
/// - `prop-3.2`: the three hom-set strongness conditions agree.
/// - `prop-5.3`: built algebras are strongly graded and object unital, the corner
///   equation holds, and strong idempotents match hom-set strongness.
/// - `groupoids`: every instance is a groupoid and hom-set strong.
/// - `mutations`: every mutation is rejected with its targeted error class.
pub fn verify_suite(name: &str, instances: &[SuiteInstance], cap: usize) -> Result<SuiteReport, CorpusError> {
    let check: fn(&SuiteInstance, usize) -> Outcome = match name {
        "prop-2.4" => check_idempotents,
        "prop-3.2" => check_category,
        "prop-5.3" => check_skew,
        "groupoids" => check_groupoid,
        "mutations" => check_mutation,
        _ => return Err(CorpusError::UnknownSuite(name.to_string())),
    };
    let mut report = SuiteReport {
        suite: name.to_string(),
        instances: instances.len(),
        passed: 0,
        failures: Vec::new(),
        tallies: BTreeMap::new(),
    };
    for (index, inst) in instances.iter().enumerate() {
        match check(inst, cap) {
            Ok(tags) => {
                report.passed += 1;
                for t in tags {
                    *report.tallies.entry(t).or_default() += 1;
                }
            }
            Err(reason) => report.failures.push(SuiteFailure { index, seed: inst.seed, reason }),
        }
    }
    Ok(report)
}

fn validated(inst: &SuiteInstance) -> Result<Validated, String> {
    inst.instance.validate().map_err(|e| format!("generated instance is invalid: {e}"))
}

fn check_idempotents(inst: &SuiteInstance, cap: usize) -> Outcome {
    let set = validated(inst)?.idempotent_set().ok_or("instance carries no idempotent set")?;
    let table = peirce_table(&set);
    let report = strong_condition_report(&table);
    if !report.agree {
        return Err(format!("strongness conditions disagree: {report:?}"));
    }
    if !report.all_hold() {
        return Ok(vec!["not_strong".into()]);
    }
    let mut tags = vec!["strong".to_string()];
    for i in 0..set.len() {
        for j in 0..set.len() {
            if table.component(i, j).is_zero() {
                continue;
            }
            for side in [Side::Left, Side::Right] {
                let c = corner_lattice_correspondence(&table, i, j, side, cap).map_err(|e| e.to_string())?;
                if !c.is_isomorphism() {
                    return Err(format!("lattice correspondence fails for ({i}, {j}) on the {side} side"));
                }
                tags.push("correspondence".into());
            }
        }
    }
    Ok(tags)
}

fn check_category(inst: &SuiteInstance, _cap: usize) -> Outcome {
    let Validated::Category(cat) = validated(inst)? else {
        return Err("not a category instance".into());
    };
    let report = homset_strong_report(&cat);
    if !report.agree {
        return Err(format!("hom-set strongness conditions disagree: {report:?}"));
    }
    Ok(vec![if report.all_hold() { "homset_strong" } else { "not_homset_strong" }.into()])
}

fn check_groupoid(inst: &SuiteInstance, _cap: usize) -> Outcome {
    let Validated::Category(cat) = validated(inst)? else {
        return Err("not a category instance".into());
    };
    if !cat.is_groupoid() {
        return Err("generated category is not a groupoid".into());
    }
    let report = homset_strong_report(&cat);
    if !report.all_hold() {
        return Err(format!("groupoid is not hom-set strong: {report:?}"));
    }
    Ok(vec!["groupoid".into()])
}

fn check_skew(inst: &SuiteInstance, _cap: usize) -> Outcome {
    let Validated::System(alg) = validated(inst)? else {
        return Err("not a system instance".into());
    };
    if !alg.strongly_graded || !alg.object_unital {
        return Err("canonical grading is not strongly graded and object unital".into());
    }
    let corner = corner_equation_check(alg.grading()).map_err(|e| e.to_string())?;
    if !corner.holds {
        return Err(format!("corner equation fails: {:?}", corner.witness));
    }
    let rec = strong_idempotent_equivalence_check(&alg).map_err(|e| e.to_string())?;
    if !rec.holds() {
        return Err(format!("strong idempotents and hom-set strongness disagree: {rec:?}"));
    }
    Ok(vec![if rec.idempotents_strong { "homset_strong" } else { "not_homset_strong" }.into()])
}

fn check_mutation(inst: &SuiteInstance, _cap: usize) -> Outcome {
    let mutation: Mutation = inst.mutation.ok_or("manifest entry has no mutation")?;
    validated(inst)?;
    match mutate(&inst.instance, &mutation) {
        Ok(m) => match m.instance.validate() {
            Err(e) if mutation.target.accepts(&e) => Ok(vec![mutation.target.expected_kind().into()]),
            Err(e) => Err(format!("{}: expected {}, got {}", m.description, mutation.target.expected_kind(), e.kind())),
            Ok(_) => Err(format!("{}: mutated instance still validates", m.description)),
        },
        Err(CorpusError::CannotTarget(_)) => Ok(vec!["cannot_target".into()]),
        Err(e) => Err(e.to_string()),
    }
}
