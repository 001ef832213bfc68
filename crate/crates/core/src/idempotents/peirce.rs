use super::{IdempotentError, IdempotentSet};
use crate::finring::{corner_ring, AdditiveSubgroup, CornerRing, FiniteRing, RingElement};
use crate::verdict::{SubgroupSummary, Verdict};
use serde::Serialize;

/// All Peirce components `S_ij = e_i S e_j` of a complete set, plus the diagonal corners.
#[derive(Debug, Clone)]
pub struct PeirceTable {
    set: IdempotentSet,
    components: Vec<Vec<AdditiveSubgroup>>,
    corners: Vec<Option<CornerRing>>,
}

impl PeirceTable {
    pub fn set(&self) -> &IdempotentSet {
        &self.set
    }

    pub fn ring(&self) -> &FiniteRing {
        self.set.ring()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, i: usize, j: usize) -> &AdditiveSubgroup {
        &self.components[i][j]
    }

    pub fn components(&self) -> &[Vec<AdditiveSubgroup>] {
        &self.components
    }

    /// The corner `e_i S e_i` as a standalone ring with identity `e_i`.
    ///
    /// `None` only when the corner is not free over Z/m, which needs a modulus
    /// that is not a prime power.
    pub fn corner_ring(&self, i: usize) -> Option<&CornerRing> {
        self.corners.get(i).and_then(Option::as_ref)
    }

    /// `S = ⊕_{i,j} S_ij`: the components sum to `S` and their orders multiply to `|S|`.
    pub fn is_direct_sum(&self) -> bool {
        let ring = self.ring();
        let all: Vec<&AdditiveSubgroup> = self.components.iter().flatten().collect();
        let product = all.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.order()));
        product == Some(ring.order()) && AdditiveSubgroup::sum_all(ring, all).is_whole()
    }
}

/// `e_i x e_j` over the ring basis, spanned.
pub(crate) fn sandwich(ring: &FiniteRing, left: &RingElement, right: &RingElement) -> AdditiveSubgroup {
    let gens = (0..ring.rank())
        .map(|k| {
            let t = ring.mul_coords(left.coords(), &ring.unit_vector(k));
            ring.mul_coords(&t, right.coords())
        })
        .collect();
    AdditiveSubgroup::from_coords(ring, gens)
}

pub fn peirce_table(set: &IdempotentSet) -> PeirceTable {
    let ring = set.ring();
    let es = set.elements();
    let components: Vec<Vec<AdditiveSubgroup>> = es
        .iter()
        .map(|ei| es.iter().map(|ej| sandwich(ring, ei, ej)).collect())
        .collect();
    let corners = es.iter().map(|e| corner_ring(ring, e).ok()).collect();
    PeirceTable { set: set.clone(), components, corners }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StrongnessDefect {
    /// A component required to be nonzero is zero.
    ZeroComponent { row: usize, col: usize },
    /// The product of two components differs from the expected component.
    ProductMismatch { product: SubgroupSummary, expected: SubgroupSummary },
    /// The local unit does not lie in the product.
    UnitNotReached { product: SubgroupSummary },
}

/// Index tuple (a triple for condition 1, a pair otherwise) plus what went wrong there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongnessWitness {
    pub indices: Vec<usize>,
    pub defect: StrongnessDefect,
}

/// The three equivalent strongness conditions, each evaluated on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongnessReport {
    pub condition1: Verdict<StrongnessWitness>,
    pub condition2: Verdict<StrongnessWitness>,
    pub condition3: Verdict<StrongnessWitness>,
    pub agree: bool,
}

impl StrongnessReport {
    pub fn all_hold(&self) -> bool {
        self.condition1.holds && self.condition2.holds && self.condition3.holds
    }
}

fn zero_of(cells: &[(usize, usize)], comps: &[Vec<AdditiveSubgroup>]) -> Option<(usize, usize)> {
    cells.iter().copied().find(|&(a, b)| comps[a][b].is_zero())
}

/// Condition (1), over all ordered triples including repeats, first failure in lexicographic order.
fn condition1(comps: &[Vec<AdditiveSubgroup>]) -> Option<StrongnessWitness> {
    let k = comps.len();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let cells = [(i, j), (j, l), (i, l)];
                let nonzero = cells.iter().filter(|&&(a, b)| !comps[a][b].is_zero()).count();
                if nonzero < 2 {
                    continue;
                }
                if let Some((row, col)) = zero_of(&cells, comps) {
                    return Some(StrongnessWitness { indices: vec![i, j, l], defect: StrongnessDefect::ZeroComponent { row, col } });
                }
                let product = comps[i][j].product_unchecked(&comps[j][l]);
                if product != comps[i][l] {
                    return Some(StrongnessWitness {
                        indices: vec![i, j, l],
                        defect: StrongnessDefect::ProductMismatch { product: (&product).into(), expected: (&comps[i][l]).into() },
                    });
                }
            }
        }
    }
    None
}

fn pair_scan(
    comps: &[Vec<AdditiveSubgroup>],
    mut check: impl FnMut(usize, usize, AdditiveSubgroup) -> Option<StrongnessDefect>,
) -> Option<StrongnessWitness> {
    let k = comps.len();
    for p in 0..k {
        for q in 0..k {
            if comps[p][q].is_zero() && comps[q][p].is_zero() {
                continue;
            }
            if let Some((row, col)) = zero_of(&[(p, q), (q, p)], comps) {
                return Some(StrongnessWitness { indices: vec![p, q], defect: StrongnessDefect::ZeroComponent { row, col } });
            }
            let product = comps[p][q].product_unchecked(&comps[q][p]);
            if let Some(defect) = check(p, q, product) {
                return Some(StrongnessWitness { indices: vec![p, q], defect });
            }
        }
    }
    None
}

fn condition2(comps: &[Vec<AdditiveSubgroup>]) -> Option<StrongnessWitness> {
    pair_scan(comps, |p, _, product| {
        (product != comps[p][p])
            .then(|| StrongnessDefect::ProductMismatch { product: (&product).into(), expected: (&comps[p][p]).into() })
    })
}

pub(crate) fn condition3(comps: &[Vec<AdditiveSubgroup>], units: &[Vec<u64>]) -> Option<StrongnessWitness> {
    pair_scan(comps, |p, _, product| {
        (!product.contains_coords(&units[p])).then(|| StrongnessDefect::UnitNotReached { product: (&product).into() })
    })
}

/// Evaluate the three strongness conditions for a square table of components
/// and the local units indexing its diagonal.
///
/// Shared by Peirce tables of idempotent sets and by the hom-set components
/// `S_{G(a,b)}` of object unital gradings.
pub fn evaluate_strongness(components: &[Vec<AdditiveSubgroup>], units: &[Vec<u64>]) -> StrongnessReport {
    let condition1 = Verdict::from_first_failure(condition1(components));
    let condition2 = Verdict::from_first_failure(condition2(components));
    let condition3 = Verdict::from_first_failure(condition3(components, units));
    let agree = condition1.holds == condition2.holds && condition2.holds == condition3.holds;
    StrongnessReport { condition1, condition2, condition3, agree }
}

pub fn strong_condition_report(table: &PeirceTable) -> StrongnessReport {
    let units: Vec<Vec<u64>> = table.set().elements().iter().map(|e| e.coords().to_vec()).collect();
    evaluate_strongness(&table.components, &units)
}

/// Strongness through condition (3), the cheapest of the equivalent forms.
pub fn is_strong(set: &IdempotentSet) -> bool {
    strongness_witness(set).is_none()
}

pub(crate) fn strongness_witness(set: &IdempotentSet) -> Option<StrongnessWitness> {
    let ring = set.ring();
    let es = set.elements();
    let comps: Vec<Vec<AdditiveSubgroup>> =
        es.iter().map(|a| es.iter().map(|b| sandwich(ring, a, b)).collect()).collect();
    let units: Vec<Vec<u64>> = es.iter().map(|e| e.coords().to_vec()).collect();
    condition3(&comps, &units)
}

impl PeirceTable {
    pub fn require_strong(&self) -> Result<(), IdempotentError> {
        let units: Vec<Vec<u64>> = self.set.elements().iter().map(|e| e.coords().to_vec()).collect();
        match condition3(&self.components, &units) {
            None => Ok(()),
            Some(_) => Err(IdempotentError::NotStrong),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_ring, matrix_ring};
    use crate::idempotents::validate_complete_set;

    pub(crate) fn upper_triangular_f2() -> FiniteRing {
        let mut c = vec![0u64; 27];
        let idx = |i: usize, j: usize, k: usize| (i * 3 + j) * 3 + k;
        c[idx(0, 0, 0)] = 1;
        c[idx(0, 1, 1)] = 1;
        c[idx(1, 2, 1)] = 1;
        c[idx(2, 2, 2)] = 1;
        make_ring(2, 3, c, Some(vec!["E11".into(), "E12".into(), "E22".into()])).unwrap()
    }

    #[test]
    fn m2f2_components_have_order_two() {
        let r = matrix_ring(2, 2).unwrap();
        let set = validate_complete_set(&r, &[r.basis_element(0), r.basis_element(3)]).unwrap();
        let t = peirce_table(&set);
        let mut product = 1;
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(t.component(i, j).order(), 2);
                product *= t.component(i, j).order();
            }
        }
        assert_eq!(product, 16);
        assert!(t.is_direct_sum());
        let c0 = t.corner_ring(0).unwrap();
        assert_eq!(c0.ring.order(), 2);
    }

    #[test]
    fn m2f2_is_strong() {
        let r = matrix_ring(2, 2).unwrap();
        let set = validate_complete_set(&r, &[r.basis_element(0), r.basis_element(3)]).unwrap();
        // E11 = E12 · E21, the single product that condition (3) needs at (0, 1).
        assert_eq!(r.mul(&r.basis_element(1), &r.basis_element(2)).unwrap(), r.basis_element(0));
        let report = strong_condition_report(&peirce_table(&set));
        assert!(report.all_hold() && report.agree);
        assert!(is_strong(&set));
    }

    #[test]
    fn upper_triangular_is_not_strong() {
        let t2 = upper_triangular_f2();
        let set = validate_complete_set(&t2, &[t2.basis_element(0), t2.basis_element(2)]).unwrap();
        let table = peirce_table(&set);
        assert!(table.component(1, 0).is_zero());
        assert!(!table.component(0, 1).is_zero());
        let report = strong_condition_report(&table);
        assert!(!report.condition1.holds && !report.condition2.holds && !report.condition3.holds);
        assert!(report.agree);
        let w = report.condition3.witness.unwrap();
        assert_eq!(w.indices, vec![0, 1]);
        assert_eq!(w.defect, StrongnessDefect::ZeroComponent { row: 1, col: 0 });
        assert_eq!(report.condition2.witness.unwrap().indices, vec![0, 1]);
        assert!(!is_strong(&set));
    }

    #[test]
    fn singleton_sets_are_strong() {
        for ring in [matrix_ring(2, 2).unwrap(), upper_triangular_f2()] {
            let set = validate_complete_set(&ring, &[ring.find_identity().unwrap()]).unwrap();
            let table = peirce_table(&set);
            assert!(table.component(0, 0).is_whole());
            let report = strong_condition_report(&table);
            assert!(report.all_hold());
            assert!(is_strong(&set));
        }
    }

    #[test]
    fn grading_of_products_and_sandwich_identity() {
        let r = matrix_ring(3, 2).unwrap();
        let set = validate_complete_set(&r, &[r.basis_element(0), r.basis_element(3)]).unwrap();
        let t = peirce_table(&set);
        let es = set.elements();
        for i in 0..2 {
            for j in 0..2 {
                for x in t.component(i, j).elements() {
                    let back = r.mul(&r.mul(&es[i], &x).unwrap(), &es[j]).unwrap();
                    assert_eq!(back, x);
                    for l in 0..2 {
                        for y in t.component(j, l).elements() {
                            assert!(t.component(i, l).contains(&r.mul(&x, &y).unwrap()).unwrap());
                        }
                    }
                }
                for k in 0..2 {
                    for l in 0..2 {
                        if (i, j) != (k, l) {
                            assert!(t.component(i, j).intersection(t.component(k, l)).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }
}
