use super::{AdditiveSubgroup, FiniteRing, RingElement, RingError};

/// A corner ring `eSe` packaged as a standalone [`FiniteRing`], together with the
/// coordinate maps between it and the ambient ring.
#[derive(Debug, Clone)]
pub struct CornerRing {
    pub ring: FiniteRing,
    pub ambient: FiniteRing,
    pub idempotent: RingElement,
    /// `eSe` as a subgroup of the ambient ring; its canonical basis is the corner's basis.
    pub subgroup: AdditiveSubgroup,
}

impl CornerRing {
    /// Inclusion `eSe → S`.
    pub fn embed(&self, x: &RingElement) -> Result<RingElement, RingError> {
        self.ring.check(x)?;
        let m = self.ambient.modulus();
        let mut v = vec![0u64; self.ambient.rank()];
        for (c, row) in x.coords().iter().zip(self.subgroup.canonical_basis()) {
            for (a, b) in v.iter_mut().zip(row) {
                *a = (*a + c * b) % m;
            }
        }
        Ok(self.ambient.wrap(v))
    }

    /// Coordinates in the corner of an ambient element, `None` if it lies outside `eSe`.
    pub fn project(&self, x: &RingElement) -> Result<Option<RingElement>, RingError> {
        self.ambient.check(x)?;
        Ok(self.subgroup.coefficients(x.coords()).map(|c| self.ring.wrap(c)))
    }
}

/// Build `eSe` for an idempotent `e`.
///
/// The canonical basis of `eSe` serves as the corner's basis, which requires
/// `eSe` to be free over Z/m (always the case for prime-power moduli). For other
/// moduli a non-free corner is reported as [`RingError::CornerNotFree`].
pub fn corner_ring(ring: &FiniteRing, e: &RingElement) -> Result<CornerRing, RingError> {
    if !ring.is_idempotent(e)? {
        return Err(RingError::NotIdempotent);
    }
    let m = ring.modulus();
    let gens = (0..ring.rank())
        .map(|k| {
            let left = ring.mul_coords(e.coords(), &ring.unit_vector(k));
            ring.mul_coords(&left, e.coords())
        })
        .collect();
    let subgroup = AdditiveSubgroup::from_coords(ring, gens);
    let basis = subgroup.canonical_basis();
    if basis.iter().any(|row| crate::howell::pivot(row).map(|(_, p)| p) != Some(1)) {
        return Err(RingError::CornerNotFree(m));
    }
    let k = basis.len();
    let mut constants = vec![0u64; k * k * k];
    for i in 0..k {
        for j in 0..k {
            let prod = ring.mul_coords(&basis[i], &basis[j]);
            let coeffs = subgroup
                .coefficients(&prod)
                .expect("eSe is closed under multiplication");
            constants[(i * k + j) * k..(i * k + j + 1) * k].copy_from_slice(&coeffs);
        }
    }
    let labels = basis.iter().map(|row| ring.display(&ring.wrap(row.clone()))).collect();
    let corner = FiniteRing::build(m, k, constants, Some(labels))?;
    Ok(CornerRing { ring: corner, ambient: ring.clone(), idempotent: e.clone(), subgroup })
}
