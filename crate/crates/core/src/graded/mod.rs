//! Rings graded by small categories.
//!
//! A grading assigns an additive subgroup `S_g` to every morphism `g` with
//! `S = ⊕ S_g`, `S_g S_h ⊆ S_{gh}` for composable pairs and `S_g S_h = 0`
//! otherwise. Components are stored per morphism; the hom-set components
//! `S_{G(a,b)} = ⊕_{g ∈ G(a,b)} S_g` are derived on demand.

use crate::finring::{AdditiveSubgroup, FiniteRing, RingError};
use crate::howell;
use crate::idempotents::{
    evaluate_strongness, is_strong, peirce_table, validate_complete_set, IdempotentError, IdempotentSet, StrongnessReport,
};
use crate::smallcat::{homset_strong_report, CategoryError, SmallCategory};
use crate::verdict::{SubgroupSummary, Verdict};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("components do not form a direct sum: their sum has order {}, the product of their orders is {product_of_orders}, the ring has order {ring_order}", covered.order)]
    NotDirectSum { covered: SubgroupSummary, product_of_orders: u128, ring_order: u128 },
    #[error("product of components {g} and {h} leaves its target: {product:?}")]
    GradingViolation { g: usize, h: usize, product: Vec<u64> },
    #[error("the grading is not object unital")]
    NotObjectUnital,
    #[error("the category is not hom-set strong")]
    CategoryNotHomSetStrong,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
}

impl GradingError {
    pub fn kind(&self) -> &'static str {
        match self {
            GradingError::ShapeMismatch(_) => "ShapeMismatch",
            GradingError::NotDirectSum { .. } => "NotDirectSum",
            GradingError::GradingViolation { .. } => "GradingViolation",
            GradingError::NotObjectUnital => "NotObjectUnital",
            GradingError::CategoryNotHomSetStrong => "CategoryNotHomSetStrong",
            GradingError::Ring(e) => e.kind(),
            GradingError::Category(e) => e.kind(),
            GradingError::Idempotent(e) => e.kind(),
        }
    }
}

/// A validated grading of a ring by a category.
#[derive(Debug, Clone)]
pub struct Grading {
    ring: FiniteRing,
    category: SmallCategory,
    components: Vec<AdditiveSubgroup>,
}

impl Grading {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn category(&self) -> &SmallCategory {
        &self.category
    }

    pub fn component(&self, g: usize) -> &AdditiveSubgroup {
        &self.components[g]
    }

    pub fn components(&self) -> &[AdditiveSubgroup] {
        &self.components
    }

    /// `S_{G(a,b)}`.
    pub fn hom_component(&self, a: usize, b: usize) -> AdditiveSubgroup {
        AdditiveSubgroup::sum_all(&self.ring, self.category.hom_set(a, b).iter().map(|&g| &self.components[g]))
    }

    /// `S_{G(a)}`, the subring graded by the endomorphism monoid of `a`.
    pub fn endo_component(&self, a: usize) -> AdditiveSubgroup {
        self.hom_component(a, a)
    }

    fn hom_table(&self) -> Vec<Vec<AdditiveSubgroup>> {
        let p = self.category.object_count();
        (0..p).map(|a| (0..p).map(|b| self.hom_component(a, b)).collect()).collect()
    }
}

/// Validate `components` (one per morphism, in morphism order) as a grading.
pub fn attach_grading(
    ring: &FiniteRing,
    category: &SmallCategory,
    components: Vec<AdditiveSubgroup>,
) -> Result<Grading, GradingError> {
    let q = category.morphism_count();
    if components.len() != q {
        return Err(GradingError::ShapeMismatch(format!("{} components for {} morphisms", components.len(), q)));
    }
    if components.iter().any(|c| c.ring() != ring) {
        return Err(RingError::RingMismatch.into());
    }
    let covered = AdditiveSubgroup::sum_all(ring, &components);
    let product = components.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.order()));
    if !covered.is_whole() || product != Some(ring.order()) {
        return Err(GradingError::NotDirectSum {
            covered: (&covered).into(),
            product_of_orders: product.unwrap_or(u128::MAX),
            ring_order: ring.order(),
        });
    }
    for g in 0..q {
        for h in 0..q {
            let target = category.compose(g, h);
            for x in components[g].canonical_basis() {
                for y in components[h].canonical_basis() {
                    let xy = ring.mul_coords(x, y);
                    let ok = match target {
                        Some(gh) => components[gh].contains_coords(&xy),
                        None => xy.iter().all(|&c| c == 0),
                    };
                    if !ok {
                        return Err(GradingError::GradingViolation { g, h, product: xy });
                    }
                }
            }
        }
    }
    Ok(Grading { ring: ring.clone(), category: category.clone(), components })
}

/// Build the components from generator coordinate lists, then validate.
pub fn grading_from_generators(
    ring: &FiniteRing,
    category: &SmallCategory,
    generators: &[Vec<Vec<u64>>],
) -> Result<Grading, GradingError> {
    let mut components = Vec::with_capacity(generators.len());
    for gens in generators {
        let elems = gens.iter().map(|v| ring.element(v.clone())).collect::<Result<Vec<_>, _>>()?;
        components.push(AdditiveSubgroup::span(ring, &elems)?);
    }
    attach_grading(ring, category, components)
}

/// The identity of a subring given as a subgroup, if it has a nonzero one.
pub(crate) fn local_unit(sub: &AdditiveSubgroup) -> Option<Vec<u64>> {
    let ring = sub.ring();
    let basis = sub.canonical_basis();
    if basis.is_empty() {
        return None;
    }
    // u = Σ c_i r_i with u·x_j = x_j = x_j·u for every basis row x_j.
    let rows: Vec<Vec<u64>> = basis
        .iter()
        .map(|r| {
            basis
                .iter()
                .flat_map(|x| ring.mul_coords(r, x).into_iter().chain(ring.mul_coords(x, r)))
                .collect()
        })
        .collect();
    let rhs: Vec<u64> = basis.iter().flat_map(|x| x.iter().chain(x.iter()).copied()).collect();
    let coeffs = howell::solve_left(&rows, &rhs, ring.modulus())?;
    let m = ring.modulus();
    let mut u = vec![0u64; ring.rank()];
    for (c, r) in coeffs.iter().zip(basis) {
        for (a, b) in u.iter_mut().zip(r) {
            *a = (*a + c * b) % m;
        }
    }
    Some(u)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectUnitalDefect {
    /// `S_a` has no nonzero identity.
    ComponentNotUnital { object: usize },
    LeftUnitFails { morphism: usize, element: Vec<u64> },
    RightUnitFails { morphism: usize, element: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectUnitalReport {
    pub verdict: Verdict<ObjectUnitalDefect>,
    /// Local units `1_{S_a}` by object, present when the grading is object unital.
    pub units: Option<Vec<Vec<u64>>>,
}

/// Object unitality: every `S_a` (the component of the identity at `a`) has an
/// identity, and those identities act as one-sided units on homogeneous elements.
pub fn object_unital_check(grading: &Grading) -> ObjectUnitalReport {
    let cat = &grading.category;
    let ring = &grading.ring;
    let mut units = Vec::with_capacity(cat.object_count());
    for a in 0..cat.object_count() {
        match local_unit(&grading.components[cat.identity(a)]) {
            Some(u) => units.push(u),
            None => {
                return ObjectUnitalReport { verdict: Verdict::fail(ObjectUnitalDefect::ComponentNotUnital { object: a }), units: None }
            }
        }
    }
    for g in 0..cat.morphism_count() {
        for x in grading.components[g].canonical_basis() {
            if &ring.mul_coords(&units[cat.cod(g)], x) != x {
                let defect = ObjectUnitalDefect::LeftUnitFails { morphism: g, element: x.clone() };
                return ObjectUnitalReport { verdict: Verdict::fail(defect), units: None };
            }
            if &ring.mul_coords(x, &units[cat.dom(g)]) != x {
                let defect = ObjectUnitalDefect::RightUnitFails { morphism: g, element: x.clone() };
                return ObjectUnitalReport { verdict: Verdict::fail(defect), units: None };
            }
        }
    }
    ObjectUnitalReport { verdict: Verdict::pass(), units: Some(units) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongGradingWitness {
    pub g: usize,
    pub h: usize,
    pub product: SubgroupSummary,
    pub expected: SubgroupSummary,
}

/// `S_g S_h = S_{gh}` for every composable pair.
pub fn strongly_graded_check(grading: &Grading) -> Verdict<StrongGradingWitness> {
    let cat = &grading.category;
    let q = cat.morphism_count();
    for g in 0..q {
        for h in 0..q {
            let Some(gh) = cat.compose(g, h) else { continue };
            let product = grading.components[g].product_unchecked(&grading.components[h]);
            if product != grading.components[gh] {
                return Verdict::fail(StrongGradingWitness {
                    g,
                    h,
                    product: (&product).into(),
                    expected: (&grading.components[gh]).into(),
                });
            }
        }
    }
    Verdict::pass()
}

/// The local units `{1_{S_a}}` as a validated complete set of idempotents.
pub fn induced_idempotents(grading: &Grading) -> Result<IdempotentSet, GradingError> {
    let units = object_unital_check(grading).units.ok_or(GradingError::NotObjectUnital)?;
    let elems: Vec<_> = units.into_iter().map(|u| grading.ring.wrap(u)).collect();
    Ok(validate_complete_set(&grading.ring, &elems)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerWitness {
    pub a: usize,
    pub b: usize,
    pub corner: SubgroupSummary,
    pub hom_component: SubgroupSummary,
}

/// `1_{S_a} S 1_{S_b} = S_{G(a,b)}` for every object pair.
pub fn corner_equation_check(grading: &Grading) -> Result<Verdict<CornerWitness>, GradingError> {
    let set = induced_idempotents(grading)?;
    let table = peirce_table(&set);
    let p = grading.category.object_count();
    for a in 0..p {
        for b in 0..p {
            let hom = grading.hom_component(a, b);
            if table.component(a, b) != &hom {
                return Ok(Verdict::fail(CornerWitness {
                    a,
                    b,
                    corner: table.component(a, b).into(),
                    hom_component: (&hom).into(),
                }));
            }
        }
    }
    Ok(Verdict::pass())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomSetGradedReport {
    /// Conditions (1)–(3) over the hom-set components `S_{G(a,b)}`.
    pub conditions: StrongnessReport,
    /// Condition (4): the induced idempotents form a strong complete set.
    pub idempotents_strong: bool,
    pub corner_equation: Verdict<CornerWitness>,
    pub agree: bool,
}

impl HomSetGradedReport {
    pub fn holds(&self) -> bool {
        self.conditions.all_hold() && self.idempotents_strong
    }
}

/// Hom-set strong grading conditions; requires an object unital grading by a hom-set strong category.
pub fn homset_strongly_graded_report(grading: &Grading) -> Result<HomSetGradedReport, GradingError> {
    let units = object_unital_check(grading).units.ok_or(GradingError::NotObjectUnital)?;
    if !homset_strong_report(&grading.category).condition3.holds {
        return Err(GradingError::CategoryNotHomSetStrong);
    }
    let conditions = evaluate_strongness(&grading.hom_table(), &units);
    let idempotents_strong = is_strong(&induced_idempotents(grading)?);
    let corner_equation = corner_equation_check(grading)?;
    let agree = conditions.agree && conditions.condition3.holds == idempotents_strong;
    Ok(HomSetGradedReport { conditions, idempotents_strong, corner_equation, agree })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedFlags {
    pub object_unital: bool,
    pub strongly_graded: bool,
    /// Absent when the hypotheses (object unital, hom-set strong category) fail.
    pub homset_strongly_graded: Option<bool>,
    pub induced_idempotents: Option<Vec<Vec<u64>>>,
}

pub fn graded_flags(grading: &Grading) -> GradedFlags {
    let unital = object_unital_check(grading);
    GradedFlags {
        object_unital: unital.verdict.holds,
        strongly_graded: strongly_graded_check(grading).holds,
        homset_strongly_graded: homset_strongly_graded_report(grading).ok().map(|r| r.holds()),
        induced_idempotents: unital.units,
    }
}

#[cfg(test)]
mod tests;
