//! Complete sets of idempotents and their Peirce decompositions.
//!
//! A ring `S` has enough idempotents when there are nonzero orthogonal
//! idempotents `e_i` with `S = ⊕ S e_i = ⊕ e_i S`. The Peirce components
//! `S_ij = e_i S e_j` then decompose `S`, and strongness asks that whenever a
//! mixed component is nonzero the corners are reached through it.

mod lattice;
mod peirce;

pub use lattice::{chain_profile, corner_lattice_correspondence, ChainProfile, CornerProfile, Correspondence, LatticeStats};
pub use peirce::{
    evaluate_strongness, is_strong, peirce_table, strong_condition_report, PeirceTable, StrongnessDefect,
    StrongnessReport, StrongnessWitness,
};

use crate::finring::{AdditiveSubgroup, FiniteRing, RingElement, RingError, Side};
use crate::verdict::SubgroupSummary;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdempotentError {
    #[error("candidate {0} is zero")]
    ZeroIdempotent(usize),
    #[error("candidate {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("candidates {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("set is not complete on the {side} side: the sum of the {side} components has order {} of {ring_order}", covered.order)]
    NotComplete { side: Side, covered: SubgroupSummary, ring_order: u64 },
    #[error("the complete set of idempotents is not strong")]
    NotStrong,
    #[error("Peirce component S_({0},{1}) is zero")]
    ZeroComponent(usize, usize),
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl IdempotentError {
    pub fn kind(&self) -> &'static str {
        match self {
            IdempotentError::ZeroIdempotent(_) => "ZeroIdempotent",
            IdempotentError::NotIdempotent(_) => "NotIdempotent",
            IdempotentError::NotOrthogonal(..) => "NotOrthogonal",
            IdempotentError::NotComplete { .. } => "NotComplete",
            IdempotentError::NotStrong => "NotStrong",
            IdempotentError::ZeroComponent(..) => "ZeroComponent",
            IdempotentError::IndexOutOfRange(_) => "IndexOutOfRange",
            IdempotentError::Ring(e) => e.kind(),
        }
    }
}

/// Which axioms a candidate family satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomRecord {
    pub nonzero: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub left_complete: bool,
    pub right_complete: bool,
}

impl AxiomRecord {
    pub fn all(&self) -> bool {
        self.nonzero && self.idempotent && self.orthogonal && self.left_complete && self.right_complete
    }
}

/// A validated complete set of idempotents `{e_i}` indexed by `0..k`.
#[derive(Debug, Clone)]
pub struct IdempotentSet {
    ring: FiniteRing,
    elements: Vec<RingElement>,
    validation: AxiomRecord,
}

impl IdempotentSet {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn validation(&self) -> AxiomRecord {
        self.validation
    }

    pub fn get(&self, i: usize) -> Result<&RingElement, IdempotentError> {
        self.elements.get(i).ok_or(IdempotentError::IndexOutOfRange(i))
    }
}

/// `S e` (left) or `e S` (right) as a subgroup.
pub(crate) fn one_sided_component(ring: &FiniteRing, e: &RingElement, side: Side) -> AdditiveSubgroup {
    let gens = (0..ring.rank())
        .map(|k| {
            let b = ring.unit_vector(k);
            match side {
                Side::Left => ring.mul_coords(&b, e.coords()),
                Side::Right => ring.mul_coords(e.coords(), &b),
            }
        })
        .collect();
    AdditiveSubgroup::from_coords(ring, gens)
}

fn completeness_defect(ring: &FiniteRing, elements: &[RingElement], side: Side) -> Option<AdditiveSubgroup> {
    let parts: Vec<AdditiveSubgroup> = elements.iter().map(|e| one_sided_component(ring, e, side)).collect();
    let total = AdditiveSubgroup::sum_all(ring, &parts);
    let product: Option<u128> = parts.iter().try_fold(1u128, |acc, p| acc.checked_mul(p.order()));
    let direct = product == Some(ring.order());
    (!(total.is_whole() && direct)).then_some(total)
}

/// Evaluate every axiom of a complete set without stopping at the first failure.
pub fn axiom_record(ring: &FiniteRing, candidates: &[RingElement]) -> Result<AxiomRecord, IdempotentError> {
    for c in candidates {
        ring.check(c)?;
    }
    let nonzero = candidates.iter().all(|e| !e.is_zero());
    let idempotent = candidates.iter().all(|e| ring.mul_coords(e.coords(), e.coords()) == e.coords());
    let orthogonal = orthogonality_defect(ring, candidates).is_none();
    Ok(AxiomRecord {
        nonzero,
        idempotent,
        orthogonal,
        left_complete: completeness_defect(ring, candidates, Side::Left).is_none(),
        right_complete: completeness_defect(ring, candidates, Side::Right).is_none(),
    })
}

fn orthogonality_defect(ring: &FiniteRing, candidates: &[RingElement]) -> Option<(usize, usize)> {
    for (i, a) in candidates.iter().enumerate() {
        for (j, b) in candidates.iter().enumerate() {
            if i != j && ring.mul_coords(a.coords(), b.coords()).iter().any(|&x| x != 0) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Accept `candidates` as a complete set of idempotents, or report the first failed axiom.
///
/// Axioms are checked in the order: nonzero, idempotent, orthogonal, left
/// completeness, right completeness.
pub fn validate_complete_set(ring: &FiniteRing, candidates: &[RingElement]) -> Result<IdempotentSet, IdempotentError> {
    for c in candidates {
        ring.check(c)?;
    }
    if let Some(i) = candidates.iter().position(|e| e.is_zero()) {
        return Err(IdempotentError::ZeroIdempotent(i));
    }
    if let Some(i) = candidates
        .iter()
        .position(|e| ring.mul_coords(e.coords(), e.coords()) != e.coords())
    {
        return Err(IdempotentError::NotIdempotent(i));
    }
    if let Some((i, j)) = orthogonality_defect(ring, candidates) {
        return Err(IdempotentError::NotOrthogonal(i, j));
    }
    let ring_order = u64::try_from(ring.order()).unwrap_or(u64::MAX);
    for side in [Side::Left, Side::Right] {
        if let Some(covered) = completeness_defect(ring, candidates, side) {
            return Err(IdempotentError::NotComplete { side, covered: (&covered).into(), ring_order });
        }
    }
    Ok(IdempotentSet {
        ring: ring.clone(),
        elements: candidates.to_vec(),
        validation: AxiomRecord { nonzero: true, idempotent: true, orthogonal: true, left_complete: true, right_complete: true },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{matrix_ring, zero_multiplication_ring};

    #[test]
    fn matrix_units_form_complete_set() {
        let r = matrix_ring(2, 2).unwrap();
        let set = validate_complete_set(&r, &[r.basis_element(0), r.basis_element(3)]).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.validation().all());
    }

    #[test]
    fn single_matrix_unit_is_incomplete() {
        let r = matrix_ring(2, 2).unwrap();
        let e11 = r.basis_element(0);
        // Oracle: S·E11 by exhaustion.
        let mut s_e11: Vec<Vec<u64>> = r.elements().map(|x| r.mul(&x, &e11).unwrap().into_coords()).collect();
        s_e11.sort();
        s_e11.dedup();
        assert_eq!(s_e11.len(), 4);
        match validate_complete_set(&r, &[e11.clone()]).unwrap_err() {
            IdempotentError::NotComplete { side, covered, ring_order } => {
                assert_eq!(side, Side::Left);
                assert_eq!(covered.order, 4);
                assert_eq!(ring_order, 16);
            }
            other => panic!("unexpected {other:?}"),
        }
        let record = axiom_record(&r, &[e11]).unwrap();
        assert!(record.orthogonal && !record.left_complete && !record.right_complete);
    }

    #[test]
    fn identity_singleton_is_complete() {
        let r = matrix_ring(3, 2).unwrap();
        let one = r.find_identity().unwrap();
        assert_eq!(validate_complete_set(&r, &[one]).unwrap().len(), 1);
    }

    #[test]
    fn axiom_failures_are_ordered() {
        let r = matrix_ring(2, 2).unwrap();
        let e11 = r.basis_element(0);
        let e12 = r.basis_element(1);
        assert_eq!(validate_complete_set(&r, &[e11.clone(), r.zero()]).unwrap_err(), IdempotentError::ZeroIdempotent(1));
        assert_eq!(validate_complete_set(&r, &[e12]).unwrap_err(), IdempotentError::NotIdempotent(0));
        assert_eq!(validate_complete_set(&r, &[e11.clone(), e11]).unwrap_err(), IdempotentError::NotOrthogonal(0, 1));
        let z = zero_multiplication_ring(2, 1).unwrap();
        assert!(matches!(validate_complete_set(&z, &[]), Err(IdempotentError::NotComplete { .. })));
    }

    #[test]
    fn foreign_elements_rejected() {
        let r = matrix_ring(2, 2).unwrap();
        let other = matrix_ring(2, 2).unwrap();
        assert_eq!(
            validate_complete_set(&r, &[other.basis_element(0)]).unwrap_err(),
            IdempotentError::Ring(RingError::RingMismatch)
        );
    }
}
