//! Skew category systems and skew category algebras.
//!
//! A system assigns a unital ring `R_a` to each object and a ring isomorphism
//! `α_g : R_{d(g)} → R_{c(g)}` to each morphism, functorially. The algebra
//! `R ∗_α G` has elements `Σ r_g g` with `r_g ∈ R_{c(g)}` and product
//! `(r g)(r' h) = r α_g(r') (gh)` for composable pairs, zero otherwise.
//!
//! Maps are matrices over Z/m: row `i` of `α_g` is `α_g(b_i)` in the basis of `R_{c(g)}`.

use crate::finring::{enumerate_one_sided_ideals, enumerate_submodules, make_ring, ring_from_spec, AdditiveSubgroup, FiniteRing, RingError, RingSpec, Side};
use crate::graded::{
    attach_grading, homset_strongly_graded_report, induced_idempotents, object_unital_check, strongly_graded_check, Grading,
    GradingError,
};
use crate::idempotents::{is_strong, peirce_table, IdempotentError, LatticeStats};
use crate::smallcat::{category_from_spec, homset_strong_report, CategoryError, CategorySpec, SmallCategory};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsoDefect {
    NotBijective,
    NotMultiplicative { i: usize, j: usize },
    UnitNotPreserved,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("object ring {object} has modulus {found}, expected {expected}")]
    ModulusMismatch { object: usize, expected: u64, found: u64 },
    #[error("object ring {0} is not unital")]
    NotUnital(usize),
    #[error("map of morphism {morphism} is not a ring isomorphism: {defect:?}")]
    NotRingIso { morphism: usize, defect: IsoDefect },
    #[error("map of the identity at object {0} is not the identity")]
    IdentityNotIdentity(usize),
    #[error("maps are not functorial on the composable pair ({0}, {1})")]
    NotFunctorial(usize, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

impl SkewError {
    pub fn kind(&self) -> &'static str {
        match self {
            SkewError::ShapeMismatch(_) => "ShapeMismatch",
            SkewError::ModulusMismatch { .. } => "ModulusMismatch",
            SkewError::NotUnital(_) => "NotUnital",
            SkewError::NotRingIso { .. } => "NotRingIso",
            SkewError::IdentityNotIdentity(_) => "IdentityNotIdentity",
            SkewError::NotFunctorial(..) => "NotFunctorial",
            SkewError::Ring(e) => e.kind(),
            SkewError::Category(e) => e.kind(),
            SkewError::Grading(e) => e.kind(),
        }
    }
}

impl From<IdempotentError> for SkewError {
    fn from(e: IdempotentError) -> Self {
        SkewError::Grading(GradingError::Idempotent(e))
    }
}

/// Serialized system with everything inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub category: CategorySpec,
    pub object_rings: Vec<RingSpec>,
    pub maps: Vec<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone)]
pub struct SkewCategorySystem {
    category: SmallCategory,
    object_rings: Vec<FiniteRing>,
    maps: Vec<Vec<Vec<u64>>>,
    units: Vec<Vec<u64>>,
}

impl SkewCategorySystem {
    pub fn category(&self) -> &SmallCategory {
        &self.category
    }

    pub fn object_rings(&self) -> &[FiniteRing] {
        &self.object_rings
    }

    pub fn maps(&self) -> &[Vec<Vec<u64>>] {
        &self.maps
    }

    pub fn to_spec(&self) -> SystemSpec {
        SystemSpec {
            category: self.category.to_spec(),
            object_rings: self.object_rings.iter().map(FiniteRing::to_spec).collect(),
            maps: self.maps.clone(),
        }
    }
}

/// `x ↦ Σ x_i M_i` over Z/m.
fn apply(matrix: &[Vec<u64>], x: &[u64], m: u64, width: usize) -> Vec<u64> {
    let mut out = vec![0u64; width];
    for (c, row) in x.iter().zip(matrix) {
        if *c != 0 {
            for (o, r) in out.iter_mut().zip(row) {
                *o = (*o + c * r) % m;
            }
        }
    }
    out
}

fn identity_matrix(n: usize) -> Vec<Vec<u64>> {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

fn iso_defect(from: &FiniteRing, to: &FiniteRing, matrix: &[Vec<u64>], unit_from: &[u64], unit_to: &[u64]) -> Option<IsoDefect> {
    let m = from.modulus();
    let n = to.rank();
    if from.rank() != n || !AdditiveSubgroup::from_coords(to, matrix.to_vec()).is_whole() {
        return Some(IsoDefect::NotBijective);
    }
    for i in 0..from.rank() {
        for j in 0..from.rank() {
            let lhs = apply(matrix, &from.mul_coords(&from.unit_vector(i), &from.unit_vector(j)), m, n);
            if lhs != to.mul_coords(&matrix[i], &matrix[j]) {
                return Some(IsoDefect::NotMultiplicative { i, j });
            }
        }
    }
    (apply(matrix, unit_from, m, n) != unit_to).then_some(IsoDefect::UnitNotPreserved)
}

/// Validate a skew category system.
///
/// Checks run in the order: shapes, common modulus, unital object rings, each
/// map a ring isomorphism, identities mapped to identities, functoriality.
pub fn validate_system(
    category: &SmallCategory,
    object_rings: &[FiniteRing],
    maps: &[Vec<Vec<u64>>],
) -> Result<SkewCategorySystem, SkewError> {
    let p = category.object_count();
    let q = category.morphism_count();
    if object_rings.len() != p {
        return Err(SkewError::ShapeMismatch(format!("{} object rings for {p} objects", object_rings.len())));
    }
    if maps.len() != q {
        return Err(SkewError::ShapeMismatch(format!("{} maps for {q} morphisms", maps.len())));
    }
    for (g, map) in maps.iter().enumerate() {
        let (rows, cols) = (object_rings[category.dom(g)].rank(), object_rings[category.cod(g)].rank());
        if map.len() != rows || map.iter().any(|r| r.len() != cols) {
            return Err(SkewError::ShapeMismatch(format!("map of morphism {g} must be {rows}×{cols}")));
        }
    }
    let m = object_rings[0].modulus();
    if let Some((object, r)) = object_rings.iter().enumerate().find(|(_, r)| r.modulus() != m) {
        return Err(SkewError::ModulusMismatch { object, expected: m, found: r.modulus() });
    }
    if maps.iter().flatten().flatten().any(|&x| x >= m) {
        return Err(SkewError::ShapeMismatch(format!("map entries must lie in [0, {m})")));
    }
    let mut units = Vec::with_capacity(p);
    for (a, r) in object_rings.iter().enumerate() {
        units.push(r.find_identity().ok_or(SkewError::NotUnital(a))?.into_coords());
    }
    for (g, map) in maps.iter().enumerate() {
        let (d, c) = (category.dom(g), category.cod(g));
        if let Some(defect) = iso_defect(&object_rings[d], &object_rings[c], map, &units[d], &units[c]) {
            return Err(SkewError::NotRingIso { morphism: g, defect });
        }
    }
    for a in 0..p {
        if maps[category.identity(a)] != identity_matrix(object_rings[a].rank()) {
            return Err(SkewError::IdentityNotIdentity(a));
        }
    }
    for g in 0..q {
        for h in 0..q {
            let Some(gh) = category.compose(g, h) else { continue };
            let width = object_rings[category.cod(g)].rank();
            let ok = maps[h].iter().zip(&maps[gh]).all(|(row_h, row_gh)| &apply(&maps[g], row_h, m, width) == row_gh);
            if !ok {
                return Err(SkewError::NotFunctorial(g, h));
            }
        }
    }
    Ok(SkewCategorySystem { category: category.clone(), object_rings: object_rings.to_vec(), maps: maps.to_vec(), units })
}

pub fn system_from_spec(spec: &SystemSpec) -> Result<SkewCategorySystem, SkewError> {
    let category = category_from_spec(&spec.category)?;
    let rings = spec.object_rings.iter().map(ring_from_spec).collect::<Result<Vec<_>, _>>()?;
    validate_system(&category, &rings, &spec.maps)
}

/// The system with one ring at every object and identity maps.
pub fn constant_system(ring: &FiniteRing, category: &SmallCategory) -> Result<SkewCategorySystem, SkewError> {
    let rings = vec![ring.clone(); category.object_count()];
    let maps = vec![identity_matrix(ring.rank()); category.morphism_count()];
    validate_system(category, &rings, &maps)
}

/// A built skew category algebra with its canonical grading `(R ∗ G)_g = R_{c(g)} g`.
#[derive(Debug, Clone)]
pub struct SkewAlgebra {
    ring: FiniteRing,
    grading: Grading,
    system: SkewCategorySystem,
    offsets: Vec<usize>,
    /// Re-verified claims of the construction.
    pub strongly_graded: bool,
    pub object_unital: bool,
}

impl SkewAlgebra {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn system(&self) -> &SkewCategorySystem {
        &self.system
    }

    pub fn category(&self) -> &SmallCategory {
        self.system.category()
    }

    /// Index of the basis element `b_i g`.
    pub fn basis_index(&self, g: usize, i: usize) -> usize {
        self.offsets[g] + i
    }

    /// `1_{R_a} a`, the expected local unit at object `a`.
    pub fn local_unit(&self, a: usize) -> Vec<u64> {
        let id = self.category().identity(a);
        let mut v = vec![0u64; self.ring.rank()];
        for (i, &c) in self.system.units[a].iter().enumerate() {
            v[self.offsets[id] + i] = c;
        }
        v
    }
}

/// Basis order: morphisms in order, each followed through the basis of `R_{c(g)}`.
pub fn build_skew_algebra(system: &SkewCategorySystem) -> Result<SkewAlgebra, SkewError> {
    let cat = &system.category;
    let rings = &system.object_rings;
    let q = cat.morphism_count();
    let m = rings[0].modulus();
    let mut offsets = Vec::with_capacity(q);
    let mut n = 0;
    for g in 0..q {
        offsets.push(n);
        n += rings[cat.cod(g)].rank();
    }
    let mut constants = vec![0u64; n * n * n];
    for g in 0..q {
        let target = &rings[cat.cod(g)];
        for h in 0..q {
            let Some(gh) = cat.compose(g, h) else { continue };
            for i in 0..target.rank() {
                for (j, alpha_bj) in system.maps[g].iter().enumerate() {
                    let prod = target.mul_coords(&target.unit_vector(i), alpha_bj);
                    for (k, &c) in prod.iter().enumerate() {
                        constants[((offsets[g] + i) * n + offsets[h] + j) * n + offsets[gh] + k] = c;
                    }
                }
            }
        }
    }
    let labels = (0..q)
        .flat_map(|g| rings[cat.cod(g)].labels().iter().map(move |l| format!("{l}·{}", cat.labels()[g])))
        .collect();
    let ring = make_ring(m, n, constants, Some(labels))?;
    let components = (0..q)
        .map(|g| {
            let gens = (0..rings[cat.cod(g)].rank()).map(|i| ring.unit_vector(offsets[g] + i)).collect();
            AdditiveSubgroup::from_coords(&ring, gens)
        })
        .collect();
    let grading = attach_grading(&ring, cat, components)?;
    let strongly_graded = strongly_graded_check(&grading).holds;
    let object_unital = object_unital_check(&grading).verdict.holds;
    Ok(SkewAlgebra { ring, grading, system: system.clone(), offsets, strongly_graded, object_unital })
}

/// The category algebra `T[G]`.
pub fn build_category_algebra(ring: &FiniteRing, category: &SmallCategory) -> Result<SkewAlgebra, SkewError> {
    build_skew_algebra(&constant_system(ring, category)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceRecord {
    pub idempotents_strong: bool,
    pub category_homset_strong: bool,
    pub agree: bool,
    pub groupoid: bool,
    /// Hom-set strong grading report, run when both sides hold.
    pub graded_report_holds: Option<bool>,
}

impl EquivalenceRecord {
    pub fn holds(&self) -> bool {
        self.agree && self.graded_report_holds != Some(false)
    }
}

/// Both sides of "local units strong ⇔ category hom-set strong", computed independently.
pub fn strong_idempotent_equivalence_check(algebra: &SkewAlgebra) -> Result<EquivalenceRecord, SkewError> {
    let idempotents_strong = is_strong(&induced_idempotents(&algebra.grading)?);
    let category_homset_strong = homset_strong_report(algebra.category()).condition3.holds;
    let graded_report_holds = if idempotents_strong && category_homset_strong {
        Some(homset_strongly_graded_report(&algebra.grading)?.holds())
    } else {
        None
    };
    Ok(EquivalenceRecord {
        idempotents_strong,
        category_homset_strong,
        agree: idempotents_strong == category_homset_strong,
        groupoid: algebra.category().is_groupoid(),
        graded_report_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewCorner {
    pub object: usize,
    pub endomorphisms: usize,
    pub order: u64,
    /// `1_a S 1_a = S_{G(a)}`: the corner is the skew monoid ring over `G(a)`.
    pub matches_endo_component: bool,
    pub lattice: LatticeStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinianReport {
    pub object_count: usize,
    pub morphism_count: usize,
    pub corners: Vec<SkewCorner>,
    pub ring: LatticeStats,
    pub consistent: bool,
}

/// Corner extraction and lattice statistics for a skew category algebra.
///
/// Every party is finite here, so every chain condition holds on both sides
/// of each criterion; the substance is the corner identification and the counts.
pub fn artinian_criteria_report(algebra: &SkewAlgebra, cap: usize) -> Result<ArtinianReport, SkewError> {
    let set = induced_idempotents(&algebra.grading)?;
    let table = peirce_table(&set);
    let cat = algebra.category();
    let mut corners = Vec::with_capacity(cat.object_count());
    for a in 0..cat.object_count() {
        let corner = table.component(a, a);
        let left = enumerate_submodules(corner, corner, Side::Left, cap)?;
        let right = enumerate_submodules(corner, corner, Side::Right, cap)?;
        corners.push(SkewCorner {
            object: a,
            endomorphisms: cat.endomorphisms(a).len(),
            order: u64::try_from(corner.order()).unwrap_or(u64::MAX),
            matches_endo_component: corner == &algebra.grading.endo_component(a),
            lattice: LatticeStats {
                left_size: left.size(),
                left_height: left.height(),
                right_size: right.size(),
                right_height: right.height(),
            },
        });
    }
    let left = enumerate_one_sided_ideals(&algebra.ring, Side::Left, cap)?;
    let right = enumerate_one_sided_ideals(&algebra.ring, Side::Right, cap)?;
    let consistent = corners.iter().all(|c| c.matches_endo_component);
    Ok(ArtinianReport {
        object_count: cat.object_count(),
        morphism_count: cat.morphism_count(),
        corners,
        ring: LatticeStats { left_size: left.size(), left_height: left.height(), right_size: right.size(), right_height: right.height() },
        consistent,
    })
}

#[cfg(test)]
mod tests;
