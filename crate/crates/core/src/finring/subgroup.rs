use super::{FiniteRing, RingElement, RingError};
use crate::howell;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// An additive subgroup of a finite ring, stored by the Howell normal form of
/// a generating set. Two subgroups of the same ring are equal exactly when
/// their canonical bases are identical.
#[derive(Clone)]
pub struct AdditiveSubgroup {
    ring: FiniteRing,
    rows: Vec<Vec<u64>>,
    order: u128,
}

impl fmt::Debug for AdditiveSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdditiveSubgroup")
            .field("order", &self.order)
            .field("basis", &self.rows)
            .finish()
    }
}

impl PartialEq for AdditiveSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rows == other.rows
    }
}

impl Eq for AdditiveSubgroup {}

impl Hash for AdditiveSubgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.id().hash(state);
        self.rows.hash(state);
    }
}

/// Canonical sort: by order, then by canonical basis.
impl Ord for AdditiveSubgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .id()
            .cmp(&other.ring.id())
            .then(self.order.cmp(&other.order))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for AdditiveSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AdditiveSubgroup {
    /// Subgroup generated by raw coordinate vectors.
    pub(crate) fn from_coords(ring: &FiniteRing, gens: Vec<Vec<u64>>) -> AdditiveSubgroup {
        let rows = howell::howell_form(gens, ring.modulus(), ring.rank());
        let order = howell::span_order(&rows, ring.modulus());
        AdditiveSubgroup { ring: ring.clone(), rows, order }
    }

    /// The subgroup generated by `generators` (their integer span).
    pub fn span(ring: &FiniteRing, generators: &[RingElement]) -> Result<AdditiveSubgroup, RingError> {
        for g in generators {
            ring.check(g)?;
        }
        Ok(Self::from_coords(ring, generators.iter().map(|g| g.coords.clone()).collect()))
    }

    pub fn zero(ring: &FiniteRing) -> AdditiveSubgroup {
        Self::from_coords(ring, Vec::new())
    }

    pub fn whole(ring: &FiniteRing) -> AdditiveSubgroup {
        Self::from_coords(ring, (0..ring.rank()).map(|i| ring.unit_vector(i)).collect())
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.ring.order()
    }

    /// Rows of the Howell normal form.
    pub fn canonical_basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn generators(&self) -> Vec<RingElement> {
        self.rows.iter().map(|r| self.ring.wrap(r.clone())).collect()
    }

    pub(crate) fn contains_coords(&self, v: &[u64]) -> bool {
        howell::contains(&self.rows, v, self.ring.modulus())
    }

    pub fn contains(&self, x: &RingElement) -> Result<bool, RingError> {
        self.ring.check(x)?;
        Ok(self.contains_coords(&x.coords))
    }

    fn same_ring(&self, other: &AdditiveSubgroup) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &AdditiveSubgroup) -> bool {
        self.ring == other.ring && self.rows.iter().all(|r| other.contains_coords(r))
    }

    pub fn sum(&self, other: &AdditiveSubgroup) -> Result<AdditiveSubgroup, RingError> {
        self.same_ring(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &AdditiveSubgroup) -> AdditiveSubgroup {
        let mut gens = self.rows.clone();
        gens.extend(other.rows.iter().cloned());
        Self::from_coords(&self.ring, gens)
    }

    /// Sum of a family of subgroups; the zero subgroup for an empty family.
    pub fn sum_all<'a>(
        ring: &FiniteRing,
        parts: impl IntoIterator<Item = &'a AdditiveSubgroup>,
    ) -> AdditiveSubgroup {
        let gens = parts.into_iter().flat_map(|p| p.rows.iter().cloned()).collect();
        Self::from_coords(ring, gens)
    }

    /// Intersection, by enumerating the smaller side.
    pub fn intersection(&self, other: &AdditiveSubgroup) -> Result<AdditiveSubgroup, RingError> {
        self.same_ring(other)?;
        let (small, large) = if self.order <= other.order { (self, other) } else { (other, self) };
        let common = small.element_coords().into_iter().filter(|v| large.contains_coords(v)).collect();
        Ok(Self::from_coords(&self.ring, common))
    }

    pub(crate) fn element_coords(&self) -> Vec<Vec<u64>> {
        howell::span_elements(&self.rows, self.ring.modulus(), self.ring.rank())
    }

    /// Every element, in canonical enumeration order.
    pub fn elements(&self) -> Vec<RingElement> {
        self.element_coords().into_iter().map(|v| self.ring.wrap(v)).collect()
    }

    /// The additive subgroup generated by all products `a·b`, `a ∈ self`, `b ∈ other`.
    ///
    /// By bilinearity the products of canonical generators already span it.
    pub fn product(&self, other: &AdditiveSubgroup) -> Result<AdditiveSubgroup, RingError> {
        self.same_ring(other)?;
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &AdditiveSubgroup) -> AdditiveSubgroup {
        let mut gens = Vec::with_capacity(self.rows.len() * other.rows.len());
        for a in &self.rows {
            for b in &other.rows {
                gens.push(self.ring.mul_coords(a, b));
            }
        }
        Self::from_coords(&self.ring, gens)
    }

    /// `x · H` for a single element `x`.
    pub fn left_multiple(&self, x: &RingElement) -> Result<AdditiveSubgroup, RingError> {
        self.ring.check(x)?;
        let gens = self.rows.iter().map(|r| self.ring.mul_coords(&x.coords, r)).collect();
        Ok(Self::from_coords(&self.ring, gens))
    }

    /// `H · x` for a single element `x`.
    pub fn right_multiple(&self, x: &RingElement) -> Result<AdditiveSubgroup, RingError> {
        self.ring.check(x)?;
        let gens = self.rows.iter().map(|r| self.ring.mul_coords(r, &x.coords)).collect();
        Ok(Self::from_coords(&self.ring, gens))
    }

    /// Coordinates of a member with respect to the canonical basis, if it is a member.
    pub(crate) fn coefficients(&self, v: &[u64]) -> Option<Vec<u64>> {
        let (rem, coeffs) = howell::reduce_with_coefficients(&self.rows, v, self.ring.modulus());
        rem.iter().all(|&x| x == 0).then_some(coeffs)
    }
}
