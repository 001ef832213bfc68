use super::peirce::{peirce_table, sandwich, PeirceTable};
use super::{one_sided_component, IdempotentError, IdempotentSet};
use crate::finring::{enumerate_one_sided_ideals, enumerate_submodules, AdditiveSubgroup, FiniteRing, IdealLattice, RingError, Side};
use serde::Serialize;

/// Order isomorphism between one-sided ideals of a corner `S_i` and submodules of a mixed component.
///
/// For the left side the target is the poset of left `S_j`-submodules of
/// `S_ji`, with `α(I) = e_j S I` and `β(M) = e_i S M`. The right side mirrors
/// it: right `S_j`-submodules of `S_ij`, `α(I) = I S e_j`, `β(M) = M S e_i`.
#[derive(Debug, Clone, Serialize)]
pub struct Correspondence {
    pub side: Side,
    pub i: usize,
    pub j: usize,
    #[serde(skip)]
    pub source: IdealLattice,
    #[serde(skip)]
    pub target: IdealLattice,
    pub source_size: usize,
    pub target_size: usize,
    pub source_height: usize,
    pub target_height: usize,
    /// `alpha[a]` is the target index of `α(source[a])`, `None` if it left the target poset.
    pub alpha: Vec<Option<usize>>,
    pub beta: Vec<Option<usize>>,
    pub beta_after_alpha_is_identity: bool,
    pub alpha_after_beta_is_identity: bool,
    pub preserves_inclusion: bool,
}

impl Correspondence {
    pub fn is_isomorphism(&self) -> bool {
        self.beta_after_alpha_is_identity
            && self.alpha_after_beta_is_identity
            && self.preserves_inclusion
            && self.source_size == self.target_size
            && self.source_height == self.target_height
    }
}

fn transport(members: &[AdditiveSubgroup], into: &IdealLattice, map: impl Fn(&AdditiveSubgroup) -> AdditiveSubgroup) -> Vec<Option<usize>> {
    members.iter().map(|x| into.index_of(&map(x))).collect()
}

fn round_trip(there: &[Option<usize>], back: &[Option<usize>]) -> bool {
    there
        .iter()
        .enumerate()
        .all(|(a, t)| t.and_then(|t| back[t]) == Some(a))
}

/// `x ⊆ y ⇔ f(x) ⊆ f(y)` on every pair.
fn order_embedding(members: &[AdditiveSubgroup], image: &[Option<usize>], target: &IdealLattice) -> bool {
    let t = target.members();
    members.iter().enumerate().all(|(a, x)| {
        members.iter().enumerate().all(|(b, y)| match (image[a], image[b]) {
            (Some(fa), Some(fb)) => x.is_subgroup_of(y) == t[fa].is_subgroup_of(&t[fb]),
            _ => false,
        })
    })
}

pub fn corner_lattice_correspondence(
    table: &PeirceTable,
    i: usize,
    j: usize,
    side: Side,
    cap: usize,
) -> Result<Correspondence, IdempotentError> {
    let k = table.len();
    for idx in [i, j] {
        if idx >= k {
            return Err(IdempotentError::IndexOutOfRange(idx));
        }
    }
    table.require_strong()?;
    if table.component(i, j).is_zero() {
        return Err(IdempotentError::ZeroComponent(i, j));
    }
    let ring = table.ring();
    let es = table.set().elements();
    let corner_i = table.component(i, i);
    let corner_j = table.component(j, j);
    let source = enumerate_submodules(corner_i, corner_i, side, cap)?;
    let (target, alpha_factor, beta_factor) = match side {
        Side::Left => (
            enumerate_submodules(table.component(j, i), corner_j, side, cap)?,
            one_sided_component(ring, &es[j], Side::Right),
            one_sided_component(ring, &es[i], Side::Right),
        ),
        Side::Right => (
            enumerate_submodules(table.component(i, j), corner_j, side, cap)?,
            one_sided_component(ring, &es[j], Side::Left),
            one_sided_component(ring, &es[i], Side::Left),
        ),
    };
    let apply = |factor: &AdditiveSubgroup, x: &AdditiveSubgroup| match side {
        Side::Left => factor.product_unchecked(x),
        Side::Right => x.product_unchecked(factor),
    };
    let alpha = transport(source.members(), &target, |x| apply(&alpha_factor, x));
    let beta = transport(target.members(), &source, |x| apply(&beta_factor, x));
    let preserves_inclusion =
        order_embedding(source.members(), &alpha, &target) && order_embedding(target.members(), &beta, &source);
    Ok(Correspondence {
        side,
        i,
        j,
        source_size: source.size(),
        target_size: target.size(),
        source_height: source.height(),
        target_height: target.height(),
        beta_after_alpha_is_identity: round_trip(&alpha, &beta),
        alpha_after_beta_is_identity: round_trip(&beta, &alpha),
        preserves_inclusion,
        alpha,
        beta,
        source,
        target,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeStats {
    pub left_size: usize,
    pub left_height: usize,
    pub right_size: usize,
    pub right_height: usize,
}

impl LatticeStats {
    fn of(left: &IdealLattice, right: &IdealLattice) -> LatticeStats {
        LatticeStats { left_size: left.size(), left_height: left.height(), right_size: right.size(), right_height: right.height() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerProfile {
    pub index: usize,
    pub order: u64,
    pub lattice: LatticeStats,
}

/// Quantitative chain data for a ring with a complete set of idempotents.
///
/// Every finite ring is artinian and noetherian on both sides, and so is each
/// corner, so both sides of the finiteness criterion hold. `consistent`
/// records that, together with the Peirce direct sum decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainProfile {
    pub idempotent_count: usize,
    pub corners: Vec<CornerProfile>,
    pub ring: LatticeStats,
    pub strong: bool,
    pub peirce_direct_sum: bool,
    pub ring_side_holds: bool,
    pub corner_side_holds: bool,
    pub consistent: bool,
}

pub fn chain_profile(ring: &FiniteRing, set: &IdempotentSet, cap: usize) -> Result<ChainProfile, IdempotentError> {
    if set.ring() != ring {
        return Err(RingError::RingMismatch.into());
    }
    let table = peirce_table(set);
    let mut corners = Vec::with_capacity(set.len());
    for (index, e) in set.elements().iter().enumerate() {
        let corner = sandwich(ring, e, e);
        let left = enumerate_submodules(&corner, &corner, Side::Left, cap)?;
        let right = enumerate_submodules(&corner, &corner, Side::Right, cap)?;
        corners.push(CornerProfile {
            index,
            order: u64::try_from(corner.order()).unwrap_or(u64::MAX),
            lattice: LatticeStats::of(&left, &right),
        });
    }
    let left = enumerate_one_sided_ideals(ring, Side::Left, cap)?;
    let right = enumerate_one_sided_ideals(ring, Side::Right, cap)?;
    let strong = table.require_strong().is_ok();
    let peirce_direct_sum = table.is_direct_sum();
    // Enumeration finishing is the chain condition: finite lattices have finite chains.
    let ring_side_holds = true;
    let corner_side_holds = true;
    let consistent = ring_side_holds == corner_side_holds && peirce_direct_sum;
    Ok(ChainProfile {
        idempotent_count: set.len(),
        corners,
        ring: LatticeStats::of(&left, &right),
        strong,
        peirce_direct_sum,
        ring_side_holds,
        corner_side_holds,
        consistent,
    })
}
