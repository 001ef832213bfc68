//! Seeded instance families, suite manifests and invalidating mutations.
//!
//! `generate(recipe, seed)` seeds a `ChaCha8Rng` with `seed_from_u64(seed)` and
//! draws every random choice from it; nested recipes receive a child generator
//! seeded with the next `u64` of the parent stream. Output depends only on the
//! recipe and the seed.

mod mutate;
mod recipes;
mod verify;

pub use mutate::{mutate, Axiom, Mutated, Mutation};
pub use verify::{verify_suite, SuiteFailure, SuiteReport};

use crate::finring::{ring_from_spec, RingError, RingSpec};
use crate::graded::induced_idempotents;
use crate::idempotents::{validate_complete_set, IdempotentError, IdempotentSet};
use crate::skewalg::{build_skew_algebra, system_from_spec, SkewAlgebra, SkewError, SystemSpec};
use crate::smallcat::{category_from_spec, CategoryError, CategorySpec, SmallCategory};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest ring order a recipe may produce.
pub const DEFAULT_MAX_RING_ORDER: u128 = 4096;

/// Suites with a checked-in manifest.
pub const SUITES: [&str; 5] = ["prop-2.4", "prop-3.2", "prop-5.3", "groupoids", "mutations"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Skew(#[from] SkewError),
}

impl InstanceError {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceError::Ring(e) => e.kind(),
            InstanceError::Idempotent(e) => e.kind(),
            InstanceError::Category(e) => e.kind(),
            InstanceError::Skew(e) => e.kind(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("mutation {0:?} cannot target this instance")]
    CannotTarget(Axiom),
    #[error("malformed manifest for suite {suite}: {message}")]
    Manifest { suite: String, message: String },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

impl CorpusError {
    pub fn kind(&self) -> &'static str {
        match self {
            CorpusError::ParameterOutOfRange(_) => "ParameterOutOfRange",
            CorpusError::UnknownSuite(_) => "UnknownSuite",
            CorpusError::CannotTarget(_) => "CannotTarget",
            CorpusError::Manifest { .. } => "Manifest",
            CorpusError::Instance(e) => e.kind(),
        }
    }
}

macro_rules! via_instance {
    ($($t:ty),*) => {$(
        impl From<$t> for CorpusError {
            fn from(e: $t) -> Self {
                CorpusError::Instance(e.into())
            }
        }
    )*};
}
via_instance!(RingError, IdempotentError, CategoryError, SkewError);

/// Monoids a recipe can name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum MonoidChoice {
    Trivial,
    Cyclic { order: usize },
    ZeroOne,
    FullTransformation { points: usize },
    Symmetric { points: usize },
    Klein,
    /// A random group drawn from a fixed catalogue of groups of order at most 8.
    RandomGroup { max_order: usize },
    /// Submonoid of the full transformation monoid generated by random maps.
    Random { points: usize, generators: usize, max_order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// `M_n(Z/m)` with a random coarsening of the diagonal idempotents, optionally conjugated.
    MatrixRing {
        modulus: u64,
        n: usize,
        #[serde(default)]
        conjugate: bool,
    },
    /// Monoid algebra over Z/m with the complete set `{1}`.
    MonoidAlgebra { modulus: u64, monoid: MonoidChoice },
    /// Skew category system over `(Z/m)^rank` at every object, acting by coordinate permutations.
    SkewAlgebra { modulus: u64, rank: usize, category: Box<Recipe> },
    DirectProduct { factors: Vec<Recipe> },
    /// `eSe` for `e` a random partial sum of the source's idempotents.
    Corner { source: Box<Recipe> },
    MxCategory { monoid: MonoidChoice, objects: usize },
    /// Disjoint union of `MX` over random groups.
    RandomGroupoid { max_components: usize, max_objects: usize, max_morphisms: usize },
    /// Subcategory of finite sets and maps generated by random maps.
    RandomCategory { max_objects: usize, max_points: usize, generators: usize, max_morphisms: usize },
}

/// A generated instance in its serialized form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Instance {
    IdempotentSet { ring: RingSpec, idempotents: Vec<Vec<u64>> },
    Category { category: CategorySpec },
    System { system: SystemSpec },
}

/// A validated instance.
#[derive(Debug, Clone)]
pub enum Validated {
    IdempotentSet(IdempotentSet),
    Category(SmallCategory),
    System(Box<SkewAlgebra>),
}

impl Validated {
    /// The complete set carried by the instance; for systems, the induced local units.
    pub fn idempotent_set(&self) -> Option<IdempotentSet> {
        match self {
            Validated::IdempotentSet(s) => Some(s.clone()),
            Validated::Category(_) => None,
            Validated::System(alg) => induced_idempotents(alg.grading()).ok(),
        }
    }
}

impl Instance {
    /// JSON with sorted keys and no whitespace.
    pub fn canonical_json(&self) -> String {
        serde_json::to_value(self).expect("instances serialize").to_string()
    }

    pub fn validate(&self) -> Result<Validated, InstanceError> {
        match self {
            Instance::IdempotentSet { ring, idempotents } => {
                let ring = ring_from_spec(ring)?;
                let elems = idempotents.iter().map(|v| ring.element(v.clone())).collect::<Result<Vec<_>, _>>()?;
                Ok(Validated::IdempotentSet(validate_complete_set(&ring, &elems)?))
            }
            Instance::Category { category } => Ok(Validated::Category(category_from_spec(category)?)),
            Instance::System { system } => {
                let sys = system_from_spec(system)?;
                Ok(Validated::System(Box::new(build_skew_algebra(&sys)?)))
            }
        }
    }
}

pub fn generate(recipe: &Recipe, seed: u64) -> Result<Instance, CorpusError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(recipes::build(recipe, &mut rng)?.into_instance())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub recipe: Recipe,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub suite: String,
    pub entries: Vec<ManifestEntry>,
}

fn manifest_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "prop-2.4" => include_str!("../../suites/prop-2.4.json"),
        "prop-3.2" => include_str!("../../suites/prop-3.2.json"),
        "prop-5.3" => include_str!("../../suites/prop-5.3.json"),
        "groupoids" => include_str!("../../suites/groupoids.json"),
        "mutations" => include_str!("../../suites/mutations.json"),
        _ => return None,
    })
}

pub fn manifest(name: &str) -> Result<Manifest, CorpusError> {
    let text = manifest_text(name).ok_or_else(|| CorpusError::UnknownSuite(name.to_string()))?;
    let m: Manifest = serde_json::from_str(text).map_err(|e| CorpusError::Manifest {
        suite: name.to_string(),
        message: e.to_string(),
    })?;
    if m.suite != name {
        return Err(CorpusError::Manifest {
            suite: name.to_string(),
            message: format!("manifest names suite {:?}", m.suite),
        });
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteInstance {
    pub recipe: Recipe,
    pub seed: u64,
    pub instance: Instance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
}

pub fn generate_suite(name: &str) -> Result<Vec<SuiteInstance>, CorpusError> {
    generate_suite_with(name, None)
}

/// Mix a global override into a manifest seed.
pub fn override_seed(seed: u64, over: Option<u64>) -> u64 {
    match over {
        None => seed,
        Some(o) => seed ^ o.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17),
    }
}

/// Like [`generate_suite`], with every manifest seed (instance and mutation) mixed with `seed_override`.
pub fn generate_suite_with(name: &str, seed_override: Option<u64>) -> Result<Vec<SuiteInstance>, CorpusError> {
    manifest(name)?
        .entries
        .into_iter()
        .map(|e| {
            let seed = override_seed(e.seed, seed_override);
            Ok(SuiteInstance {
                instance: generate(&e.recipe, seed)?,
                recipe: e.recipe,
                seed,
                mutation: e.mutation.map(|m| Mutation { target: m.target, seed: override_seed(m.seed, seed_override) }),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests;
