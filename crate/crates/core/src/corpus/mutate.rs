use super::{CorpusError, Instance, InstanceError};
use crate::finring::RingError;
use crate::idempotents::IdempotentError;
use crate::skewalg::SkewError;
use crate::smallcat::CategoryError;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// The validator axiom a mutation is meant to break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    RingAssociativity,
    Idempotence,
    Orthogonality,
    Completeness,
    CategoryIdentityLaw,
    CategoryAssociativity,
    CompositeDefined,
    MapIsomorphism,
    MapIdentity,
    Functoriality,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::RingAssociativity,
        Axiom::Idempotence,
        Axiom::Orthogonality,
        Axiom::Completeness,
        Axiom::CategoryIdentityLaw,
        Axiom::CategoryAssociativity,
        Axiom::CompositeDefined,
        Axiom::MapIsomorphism,
        Axiom::MapIdentity,
        Axiom::Functoriality,
    ];

    /// Whether `e` is exactly the error class this axiom's violation produces.
    pub fn accepts(self, e: &InstanceError) -> bool {
        use InstanceError as I;
        match self {
            Axiom::RingAssociativity => matches!(e, I::Ring(RingError::NotAssociative(..))),
            Axiom::Idempotence => matches!(e, I::Idempotent(IdempotentError::NotIdempotent(_))),
            Axiom::Orthogonality => matches!(e, I::Idempotent(IdempotentError::NotOrthogonal(..))),
            Axiom::Completeness => matches!(e, I::Idempotent(IdempotentError::NotComplete { .. })),
            Axiom::CategoryIdentityLaw => matches!(e, I::Category(CategoryError::IdentityLawViolation { .. })),
            Axiom::CategoryAssociativity => matches!(e, I::Category(CategoryError::NotAssociative(..))),
            Axiom::CompositeDefined => matches!(e, I::Category(CategoryError::MissingComposite(..))),
            Axiom::MapIsomorphism => matches!(e, I::Skew(SkewError::NotRingIso { .. })),
            Axiom::MapIdentity => matches!(e, I::Skew(SkewError::IdentityNotIdentity(_))),
            Axiom::Functoriality => matches!(e, I::Skew(SkewError::NotFunctorial(..))),
        }
    }

    /// Name of the error class [`Axiom::accepts`] matches.
    pub fn expected_kind(self) -> &'static str {
        match self {
            Axiom::RingAssociativity | Axiom::CategoryAssociativity => "NotAssociative",
            Axiom::Idempotence => "NotIdempotent",
            Axiom::Orthogonality => "NotOrthogonal",
            Axiom::Completeness => "NotComplete",
            Axiom::CategoryIdentityLaw => "IdentityLawViolation",
            Axiom::CompositeDefined => "MissingComposite",
            Axiom::MapIsomorphism => "NotRingIso",
            Axiom::MapIdentity => "IdentityNotIdentity",
            Axiom::Functoriality => "NotFunctorial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutation {
    pub target: Axiom,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mutated {
    pub instance: Instance,
    pub description: String,
}

#[derive(Debug, Clone, Copy)]
enum Edit {
    BumpConstant { index: usize, delta: u64 },
    ShiftIdempotent { k: usize, basis: usize, by: u64 },
    DuplicateIdempotent { from: usize, to: usize },
    DropIdempotent(usize),
    Recompose { triple: usize, to: usize },
    DropComposite(usize),
    ZeroMap(usize),
    TransposeIdentityMap { object: usize, i: usize, j: usize },
    TwistMap { morphism: usize, i: usize, j: usize },
    RotateMap(usize),
}

/// Perturb a valid instance so that it fails exactly the targeted validator.
///
/// Candidate perturbations for the axiom are tried in an order shuffled by the
/// mutation seed; the first whose validation fails with the targeted error class
/// is returned.
pub fn mutate(instance: &Instance, mutation: &Mutation) -> Result<Mutated, CorpusError> {
    instance.validate()?;
    let mut edits = candidates(instance, mutation.target);
    edits.shuffle(&mut ChaCha8Rng::seed_from_u64(mutation.seed));
    edits
        .into_iter()
        .map(|e| apply(instance, e))
        .find(|m| matches!(m.instance.validate(), Err(e) if mutation.target.accepts(&e)))
        .ok_or(CorpusError::CannotTarget(mutation.target))
}

fn candidates(instance: &Instance, target: Axiom) -> Vec<Edit> {
    let mut out = Vec::new();
    match (instance, target) {
        (Instance::IdempotentSet { ring, .. }, Axiom::RingAssociativity) => {
            for index in 0..ring.constants.len() {
                out.extend((1..ring.modulus).map(|delta| Edit::BumpConstant { index, delta }));
            }
        }
        (Instance::IdempotentSet { ring, idempotents }, Axiom::Idempotence) => {
            for k in 0..idempotents.len() {
                for basis in 0..ring.rank {
                    out.extend((1..ring.modulus).map(|by| Edit::ShiftIdempotent { k, basis, by }));
                }
            }
        }
        (Instance::IdempotentSet { idempotents, .. }, Axiom::Orthogonality) => {
            let n = idempotents.len();
            for from in 0..n {
                out.extend((0..n).filter(|&to| to != from).map(|to| Edit::DuplicateIdempotent { from, to }));
            }
        }
        (Instance::IdempotentSet { idempotents, .. }, Axiom::Completeness) if idempotents.len() > 1 => {
            out.extend((0..idempotents.len()).map(Edit::DropIdempotent));
        }
        (Instance::Category { category }, Axiom::CategoryIdentityLaw | Axiom::CategoryAssociativity) => {
            let ids = &category.identities;
            let m = &category.morphisms;
            for (t, &[g, h, gh]) in category.compose.iter().enumerate() {
                let wanted = match target {
                    Axiom::CategoryIdentityLaw => ids.contains(&g),
                    _ => !ids.contains(&g) && !ids.contains(&h),
                };
                if wanted {
                    out.extend(
                        (0..m.len())
                            .filter(|&k| k != gh && m[k].dom == m[gh].dom && m[k].cod == m[gh].cod)
                            .map(|to| Edit::Recompose { triple: t, to }),
                    );
                }
            }
        }
        (Instance::Category { category }, Axiom::CompositeDefined) => {
            out.extend((0..category.compose.len()).map(Edit::DropComposite));
        }
        (Instance::System { system }, Axiom::MapIsomorphism) => {
            out.extend((0..system.maps.len()).map(Edit::ZeroMap));
        }
        (Instance::System { system }, Axiom::MapIdentity) => {
            for (object, &id) in system.category.identities.iter().enumerate() {
                let r = system.maps[id].len();
                for i in 0..r {
                    out.extend((i + 1..r).map(|j| Edit::TransposeIdentityMap { object, i, j }));
                }
            }
        }
        (Instance::System { system }, Axiom::Functoriality) => {
            for morphism in 0..system.maps.len() {
                if system.category.identities.contains(&morphism) {
                    continue;
                }
                let r = system.maps[morphism].first().map_or(0, Vec::len);
                for i in 0..r {
                    out.extend((i + 1..r).map(|j| Edit::TwistMap { morphism, i, j }));
                }
                if r > 2 {
                    out.push(Edit::RotateMap(morphism));
                }
            }
        }
        _ => {}
    }
    out
}

fn apply(instance: &Instance, edit: Edit) -> Mutated {
    let mut inst = instance.clone();
    let description = match (&mut inst, edit) {
        (Instance::IdempotentSet { ring, .. }, Edit::BumpConstant { index, delta }) => {
            ring.constants[index] = (ring.constants[index] + delta) % ring.modulus;
            format!("added {delta} to structure constant {index}")
        }
        (Instance::IdempotentSet { ring, idempotents }, Edit::ShiftIdempotent { k, basis, by }) => {
            idempotents[k][basis] = (idempotents[k][basis] + by) % ring.modulus;
            format!("added {by} to coordinate {basis} of idempotent {k}")
        }
        (Instance::IdempotentSet { idempotents, .. }, Edit::DuplicateIdempotent { from, to }) => {
            idempotents[to] = idempotents[from].clone();
            format!("replaced idempotent {to} with idempotent {from}")
        }
        (Instance::IdempotentSet { idempotents, .. }, Edit::DropIdempotent(k)) => {
            idempotents.remove(k);
            format!("removed idempotent {k}")
        }
        (Instance::Category { category }, Edit::Recompose { triple, to }) => {
            let [g, h, old] = category.compose[triple];
            category.compose[triple][2] = to;
            format!("changed the composite of ({g}, {h}) from {old} to {to}")
        }
        (Instance::Category { category }, Edit::DropComposite(t)) => {
            let [g, h, _] = category.compose.remove(t);
            format!("removed the composite of ({g}, {h})")
        }
        (Instance::System { system }, Edit::ZeroMap(g)) => {
            for row in &mut system.maps[g] {
                row.fill(0);
            }
            format!("replaced the map of morphism {g} with zero")
        }
        (Instance::System { system }, Edit::TransposeIdentityMap { object, i, j }) => {
            let id = system.category.identities[object];
            system.maps[id].swap(i, j);
            format!("swapped basis elements {i} and {j} under the identity of object {object}")
        }
        (Instance::System { system }, Edit::TwistMap { morphism, i, j }) => {
            for row in &mut system.maps[morphism] {
                row.swap(i, j);
            }
            format!("composed the map of morphism {morphism} with the transposition ({i} {j})")
        }
        (Instance::System { system }, Edit::RotateMap(g)) => {
            for row in &mut system.maps[g] {
                row.rotate_right(1);
            }
            format!("composed the map of morphism {g} with a cyclic shift of coordinates")
        }
        _ => unreachable!("edits are generated for their own instance type"),
    };
    Mutated { instance: inst, description }
}
